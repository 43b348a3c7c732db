"""The bundled scenario corpus: 42 named space-cyberattack scenarios
classified along a temporal axis (era) and a spatial axis (locale)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import CorpusError
from .matrix import Cell, Matrix
from .prompts import Prompt

CORPUS_SIZE = 42


class Era(str, Enum):
    """When the threat is expected to become feasible."""

    NEAR = "near"       # exists now or within the next 5 years
    MEDIUM = "medium"   # expected to begin in 5-20 years
    LONG = "long"       # no sooner than 20 years out, if ever


class Locale(str, Enum):
    """Where the attack plays out."""

    GROUND_TO_SPACE = "ground_to_space"  # surface up to 100 km
    EARTHBOUND = "earthbound"            # LEO through MEO and GEO
    CISLUNAR_BEYOND = "cislunar_beyond"  # lunar vicinity and outward


@dataclass(frozen=True)
class Scenario:
    id: int
    title: str
    tagline: str
    era: Era
    locale: Locale
    description: str
    suggested_cells: tuple[Cell, ...] | None = None

    @property
    def heading(self) -> str:
        return f"{self.title}: {self.tagline}" if self.tagline else self.title

    def to_doc(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "tagline": self.tagline,
            "era": self.era.value,
            "locale": self.locale.value,
            "description": self.description,
            "suggested_cells": (
                [c.token for c in self.suggested_cells]
                if self.suggested_cells is not None
                else None
            ),
        }


def _read_doc(source, what: str) -> Mapping:
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise CorpusError(f"{what} document not found: {path}") from None
        except json.JSONDecodeError as e:
            raise CorpusError(f"{what} document {path}: invalid JSON ({e})") from None
        return doc
    return source


def load_corpus(
    source: str | Path | Mapping,
    matrix: Matrix | None = None,
    overlay: str | Path | Mapping | None = None,
) -> tuple[Scenario, ...]:
    """Load and validate the corpus document, optionally merging the curated
    suggested-cells overlay (which requires a matrix to resolve tokens)."""
    doc = _read_doc(source, "corpus")
    entries = doc.get("scenarios") if isinstance(doc, Mapping) else None
    if not isinstance(entries, list):
        raise CorpusError("corpus document needs a 'scenarios' list")
    if len(entries) != CORPUS_SIZE:
        raise CorpusError(f"corpus must hold exactly {CORPUS_SIZE} scenarios, found {len(entries)}")
    cells_by_id: dict[int, tuple[Cell, ...]] = {}
    if overlay is not None:
        odoc = _read_doc(overlay, "suggested-cells overlay")
        if matrix is None:
            raise CorpusError("an overlay requires a matrix to resolve cell tokens")
        mapping = odoc.get("suggested_cells")
        if not isinstance(mapping, Mapping):
            raise CorpusError("overlay document needs a 'suggested_cells' mapping")
        for key, tokens in mapping.items():
            try:
                sid = int(key)
                cells = tuple(matrix.cell(str(t)) for t in tokens)
                Prompt(cells)  # must form a valid prompt: distinct categories
            except Exception as e:
                raise CorpusError(f"overlay entry {key!r}: {e}") from None
            if not 2 <= len(cells) <= len(matrix.categories):
                raise CorpusError(
                    f"overlay entry {key!r}: {len(cells)} cells do not form a prompt"
                )
            cells_by_id[sid] = cells
    scenarios = []
    seen = set()
    for i, entry in enumerate(entries):
        where = f"scenarios[{i}]"
        if not isinstance(entry, Mapping):
            raise CorpusError(f"{where}: expected an object")
        try:
            sid = int(entry["id"])
            title = str(entry["title"])
            tagline = str(entry.get("tagline", ""))
            description = str(entry["description"])
        except (KeyError, TypeError, ValueError):
            raise CorpusError(f"{where}: requires id, title, description") from None
        if sid in seen:
            raise CorpusError(f"{where}: duplicate id {sid}")
        seen.add(sid)
        try:
            era = Era(entry["era"])
            locale = Locale(entry["locale"])
        except (KeyError, ValueError):
            raise CorpusError(f"{where}: invalid era/locale") from None
        if not title or not description:
            raise CorpusError(f"{where}: empty title or description")
        scenarios.append(
            Scenario(
                id=sid,
                title=title,
                tagline=tagline,
                era=era,
                locale=locale,
                description=description,
                suggested_cells=cells_by_id.get(sid),
            )
        )
    if sorted(seen) != list(range(1, CORPUS_SIZE + 1)):
        raise CorpusError(f"scenario ids must be contiguous 1..{CORPUS_SIZE}")
    scenarios.sort(key=lambda s: s.id)
    return tuple(scenarios)


def query(
    corpus: Sequence[Scenario],
    era: Era | str | None = None,
    locale: Locale | str | None = None,
    text: str | None = None,
    cell: Cell | str | None = None,
) -> list[Scenario]:
    """Scenarios matching every supplied facet, in id order."""
    if era is not None:
        try:
            era = Era(era)
        except ValueError:
            raise CorpusError(f"unknown era {era!r}") from None
    if locale is not None:
        try:
            locale = Locale(locale)
        except ValueError:
            raise CorpusError(f"unknown locale {locale!r}") from None
    needle = text.lower() if text else None
    token = cell.token if isinstance(cell, Cell) else cell
    out = []
    for s in sorted(corpus, key=lambda s: s.id):
        if era is not None and s.era is not era:
            continue
        if locale is not None and s.locale is not locale:
            continue
        if needle is not None:
            haystack = f"{s.title}\n{s.tagline}\n{s.description}".lower()
            if needle not in haystack:
                continue
        if token is not None:
            cells = s.suggested_cells or ()
            if token not in {c.token for c in cells}:
                continue
        out.append(s)
    return out


def bucket_counts(corpus: Iterable[Scenario]) -> dict[str, dict[str, int]]:
    """Era x locale table of scenario counts (all nine buckets, zeros kept)."""
    table = {e.value: {l.value: 0 for l in Locale} for e in Era}
    for s in corpus:
        table[s.era.value][s.locale.value] += 1
    return table
