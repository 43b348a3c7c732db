"""Matrix data model: categories of labeled cells, with validated loading.

A matrix is an ordered list of categories (single-letter ids), each holding
contiguously indexed cells. The bundled default is a 5x20 grid; custom
matrices of any shape load through the same document format.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .errors import MatrixError, UnknownCellError

_TOKEN_RE = re.compile(r"^([A-Z])([0-9]+)$")


@dataclass(frozen=True, slots=True)
class Cell:
    """One (category, index) entry, e.g. A5 'Political terrorists'."""

    category: str
    index: int
    label: str
    description: str = ""

    @property
    def token(self) -> str:
        return f"{self.category}{self.index}"


@dataclass(frozen=True, slots=True)
class Category:
    letter: str
    name: str
    cells: tuple[Cell, ...]

    @property
    def size(self) -> int:
        return len(self.cells)


class Matrix:
    """Immutable, validated grid of categories and cells."""

    __slots__ = ("categories", "source", "_by_letter", "_by_token")

    def __init__(self, categories: Iterable[Category], source: str = "custom"):
        cats = tuple(categories)
        if not cats:
            raise MatrixError("matrix has no categories")
        by_letter: dict[str, Category] = {}
        by_token: dict[str, Cell] = {}
        prev_letter = ""
        for cat in cats:
            if not _TOKEN_RE.match(cat.letter + "1"):
                raise MatrixError(f"category letter {cat.letter!r} is not a single A-Z letter")
            if cat.letter in by_letter:
                raise MatrixError(f"duplicate category letter {cat.letter!r}")
            # matrix order doubles as lexicographic order in the canonical
            # prompt ordering, so letters must ascend
            if cat.letter <= prev_letter:
                raise MatrixError(
                    f"category letters must ascend: {cat.letter!r} after {prev_letter!r}"
                )
            prev_letter = cat.letter
            if not cat.cells:
                raise MatrixError(f"category {cat.letter} has no cells")
            by_letter[cat.letter] = cat
            for pos, cell in enumerate(cat.cells, start=1):
                if cell.category != cat.letter:
                    raise MatrixError(
                        f"cell {cell.token} filed under category {cat.letter}"
                    )
                if cell.token in by_token:
                    raise MatrixError(f"duplicate cell {cell.token}")
                if cell.index != pos:
                    raise MatrixError(
                        f"category {cat.letter}: expected index {pos}, found {cell.index}"
                    )
                by_token[cell.token] = cell
        self.categories = cats
        self.source = source
        self._by_letter = by_letter
        self._by_token = by_token

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(c.letter for c in self.categories)

    @property
    def cell_count(self) -> int:
        return len(self._by_token)

    def category(self, letter: str) -> Category:
        try:
            return self._by_letter[letter]
        except KeyError:
            raise UnknownCellError(letter, "no such category") from None

    def has_category(self, letter: str) -> bool:
        return letter in self._by_letter

    def cell(self, token: str) -> Cell:
        """Resolve a canonical token like 'A5'; raises UnknownCellError."""
        m = _TOKEN_RE.match(token.strip())
        if not m:
            raise UnknownCellError(token, "expected <letter><index> like A5")
        try:
            return self._by_token[m.group(1) + str(int(m.group(2)))]
        except KeyError:
            raise UnknownCellError(token) from None

    def position(self, letter: str) -> int:
        """0-based position of a category within the matrix order."""
        for i, cat in enumerate(self.categories):
            if cat.letter == letter:
                return i
        raise UnknownCellError(letter, "no such category")

    def to_doc(self) -> dict:
        return {
            "source": self.source,
            "categories": [
                {
                    "letter": cat.letter,
                    "name": cat.name,
                    "cells": [
                        {"index": c.index, "label": c.label, "description": c.description}
                        for c in cat.cells
                    ],
                }
                for cat in self.categories
            ],
        }

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.categories == other.categories

    def __hash__(self):
        return hash(self.categories)

    def __repr__(self):
        shape = "x".join(str(c.size) for c in self.categories)
        return f"<Matrix {''.join(self.letters)} {shape}>"


def load_matrix(source: str | Path | Mapping) -> Matrix:
    """Load and validate a matrix document (path to JSON, or parsed mapping).

    Document shape: {"source": str, "categories": [{"letter", "name",
    "cells": [{"index", "label", "description"?}]}]}.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise MatrixError(f"matrix document not found: {path}") from None
        except json.JSONDecodeError as e:
            raise MatrixError(f"matrix document {path}: invalid JSON ({e})") from None
        label = str(path)
    else:
        doc = source
        label = "<document>"
    if not isinstance(doc, Mapping) or not isinstance(doc.get("categories"), list):
        raise MatrixError(f"{label}: expected an object with a 'categories' list")
    categories = []
    for ci, cat in enumerate(doc["categories"]):
        where = f"{label}: categories[{ci}]"
        if not isinstance(cat, Mapping):
            raise MatrixError(f"{where}: expected an object")
        letter = cat.get("letter")
        name = cat.get("name", "")
        cells_doc = cat.get("cells")
        if not isinstance(letter, str) or len(letter) != 1:
            raise MatrixError(f"{where}: 'letter' must be a single character")
        if not isinstance(cells_doc, list) or not cells_doc:
            raise MatrixError(f"{where}: 'cells' must be a non-empty list")
        cells = []
        for di, cd in enumerate(cells_doc):
            cwhere = f"{where}.cells[{di}]"
            if not isinstance(cd, Mapping):
                raise MatrixError(f"{cwhere}: expected an object")
            try:
                index = int(cd["index"])
                cell_label = str(cd["label"])
            except (KeyError, TypeError, ValueError):
                raise MatrixError(f"{cwhere}: requires integer 'index' and string 'label'") from None
            cells.append(
                Cell(
                    category=letter,
                    index=index,
                    label=cell_label,
                    description=str(cd.get("description", "")),
                )
            )
        categories.append(Category(letter=letter, name=str(name), cells=tuple(cells)))
    return Matrix(categories, source=str(doc.get("source", label)))
