"""Workspace: resolves the active data directory and lazily loads the
matrix, default rules, corpus, question battery, and session store.

Resolution order for data: explicit argument, then the ICARUS_DATA
environment variable, then the documents bundled with the package. Sessions
are stored under <data>/sessions when a data directory is given, otherwise
under ./sessions (bundled package data stays read-only).
"""

from __future__ import annotations

import os
from functools import cached_property
from importlib import resources
from pathlib import Path

from .corpus import Scenario, load_corpus
from .errors import DataError, NotFoundError
from .matrix import Matrix, load_matrix
from .prompts import PromptSpace
from .rules import EMPTY_RULESET, RuleSet, load_rules
from .session import SessionStore
from .worksheet import QuestionGroup, load_battery

ENV_DATA = "ICARUS_DATA"

MATRIX_FILE = "icarus_matrix.json"
RULES_FILE = "default.icrules"
SCENARIOS_FILE = "scenarios.json"
CELLS_FILE = "scenarios_cells.json"
QUESTIONS_FILE = "questions.json"


def bundled_data_dir() -> Path:
    return Path(resources.files("icarus") / "data")


class Workspace:
    def __init__(self, data_dir: str | Path | None = None,
                 sessions_dir: str | Path | None = None):
        if data_dir is None:
            data_dir = os.environ.get(ENV_DATA) or None
        self._explicit_data = data_dir is not None
        self.data_dir = Path(data_dir) if data_dir is not None else bundled_data_dir()
        if not self.data_dir.is_dir():
            raise DataError(f"data directory not found: {self.data_dir}")
        if sessions_dir is None:
            base = self.data_dir if self._explicit_data else Path.cwd()
            sessions_dir = base / "sessions"
        self.sessions_dir = Path(sessions_dir)
        self._count_cache: dict[tuple[int, int, str | None], int] = {}

    def _path(self, name: str) -> Path:
        return self.data_dir / name

    @cached_property
    def matrix(self) -> Matrix:
        return load_matrix(self._path(MATRIX_FILE))

    @cached_property
    def default_rules(self) -> RuleSet:
        path = self._path(RULES_FILE)
        if not path.is_file():
            return EMPTY_RULESET
        return load_rules(path, self.matrix)

    @cached_property
    def rulesets(self) -> dict[str, RuleSet]:
        return {"default": self.default_rules}

    def ruleset(self, rules_id: str | None) -> RuleSet | None:
        """None means unfiltered; otherwise a registered ruleset id."""
        if rules_id is None:
            return None
        try:
            return self.rulesets[rules_id]
        except KeyError:
            raise NotFoundError(f"no ruleset {rules_id!r}") from None

    @cached_property
    def corpus(self) -> tuple[Scenario, ...]:
        overlay = self._path(CELLS_FILE)
        return load_corpus(
            self._path(SCENARIOS_FILE),
            matrix=self.matrix,
            overlay=overlay if overlay.is_file() else None,
        )

    def scenario(self, scenario_id: int) -> Scenario:
        for s in self.corpus:
            if s.id == scenario_id:
                return s
        raise NotFoundError(f"no scenario {scenario_id}")

    @cached_property
    def battery(self) -> tuple[QuestionGroup, ...]:
        return load_battery(self._path(QUESTIONS_FILE))

    def space(self, kmin: int = 2, kmax: int = 5) -> PromptSpace:
        return PromptSpace(self.matrix, kmin, kmax)

    @cached_property
    def default_space(self) -> PromptSpace:
        return self.space()

    @cached_property
    def sessions(self) -> SessionStore:
        return SessionStore(self.sessions_dir, matrix=self.matrix)

    def admissible_count(self, space: PromptSpace, rules_id: str | None) -> int:
        """count_admissible with a per-workspace cache (it enumerates)."""
        from .rules import count_admissible

        key = (space.kmin, space.kmax, rules_id)
        if key not in self._count_cache:
            self._count_cache[key] = count_admissible(space, self.ruleset(rules_id))
        return self._count_cache[key]
