"""Exclusion rules: a tiny deny-list DSL over matrix cells.

Grammar (line-oriented):

    rule    := 'deny' slot ('+' slot)* ['id=' TOKEN]
    slot    := CELL | '(' CELL ('|' CELL)* ')'
    CELL    := a matrix cell token like A5

'#' starts a comment; a comment trailing a rule becomes its rationale text.
A rule denies a prompt when every slot shares at least one cell with it, so
rules match supersets too. One-slot rules ban a cell outright and are
flagged kind 'deny-cell'; rules never allow anything.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import RuleError, UnknownCellError
from .matrix import Cell, Matrix
from .prompts import Prompt, PromptSpace

_CELL_RE = re.compile(r"[A-Za-z][0-9]+")
_ID_RE = re.compile(r"id=([A-Za-z0-9_.-]+)")
_TOKEN_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class Rule:
    """A conjunction of per-category cell alternatives to deny."""

    id: str
    conjuncts: tuple[tuple[Cell, ...], ...]
    rationale: str = ""

    @property
    def kind(self) -> str:
        return "deny-cell" if len(self.conjuncts) == 1 else "deny-combo"

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(slot[0].category for slot in self.conjuncts)

    def matches(self, prompt: Prompt) -> bool:
        cells = set(prompt.cells)
        return all(any(c in cells for c in slot) for slot in self.conjuncts)

    def text(self) -> str:
        slots = []
        for slot in self.conjuncts:
            if len(slot) == 1:
                slots.append(slot[0].token)
            else:
                slots.append("(" + "|".join(c.token for c in slot) + ")")
        line = "deny " + "+".join(slots) + f" id={self.id}"
        if self.rationale:
            line += f" # {self.rationale}"
        return line


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...] = ()
    source: str = "custom"

    def __len__(self):
        return len(self.rules)

    def admits(self, prompt: Prompt) -> bool:
        return all(not r.matches(prompt) for r in self.rules)

    def by_id(self, rule_id: str) -> Rule | None:
        for r in self.rules:
            if r.id == rule_id:
                return r
        return None


EMPTY_RULESET = RuleSet()


class _Scanner:
    def __init__(self, line: str, lineno: int):
        self.line = line
        self.lineno = lineno
        self.pos = 0

    def error(self, message: str):
        raise RuleError(message, self.lineno, self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.line) and self.line[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.line)

    def peek(self) -> str:
        self.skip_ws()
        return self.line[self.pos] if self.pos < len(self.line) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def cell(self, matrix: Matrix) -> Cell:
        self.skip_ws()
        m = _CELL_RE.match(self.line, self.pos)
        if not m:
            self.error("expected a cell token like A5")
        start = self.pos
        self.pos = m.end()
        try:
            return matrix.cell(m.group(0))
        except UnknownCellError:
            self.pos = start
            self.error(f"unknown cell reference {m.group(0)!r}")


def _parse_rule_line(scan: _Scanner, matrix: Matrix, default_id: str, rationale: str) -> Rule:
    scan.skip_ws()
    m = _TOKEN_RE.match(scan.line, scan.pos)
    if not m or m.group(0) != "deny":
        scan.error(f"expected 'deny', found {m.group(0)!r}" if m else "expected 'deny'")
    scan.pos = m.end()
    conjuncts = []
    while True:
        if scan.peek() == "(":
            scan.take("(")
            alts = [scan.cell(matrix)]
            while scan.peek() == "|":
                scan.take("|")
                alts.append(scan.cell(matrix))
            scan.take(")")
        else:
            alts = [scan.cell(matrix)]
        first = alts[0].category
        for alt in alts[1:]:
            if alt.category != first:
                scan.error(
                    f"slot mixes categories {first} and {alt.category}"
                )
        if len(set(alts)) != len(alts):
            scan.error("slot repeats a cell")
        conjuncts.append(tuple(alts))
        if scan.peek() == "+":
            scan.take("+")
            continue
        break
    rule_id = default_id
    if not scan.at_end():
        scan.skip_ws()
        m = _ID_RE.match(scan.line, scan.pos)
        if not m:
            tok = _TOKEN_RE.match(scan.line, scan.pos)
            scan.error(f"unexpected token {tok.group(0)!r}")
        rule_id = m.group(1)
        scan.pos = m.end()
        if not scan.at_end():
            tok = _TOKEN_RE.match(scan.line, scan.pos)
            scan.error(f"unexpected token {tok.group(0)!r}")
    seen = set()
    for slot in conjuncts:
        letter = slot[0].category
        if letter in seen:
            scan.pos = 0
            scan.error(f"category {letter} appears in more than one slot")
        seen.add(letter)
    return Rule(id=rule_id, conjuncts=tuple(conjuncts), rationale=rationale)


def parse_rules(text: str, matrix: Matrix, source: str = "inline") -> RuleSet:
    """Parse a rule document against a matrix.

    Raises RuleError with line/column on syntax problems, unknown cells,
    or duplicate rule ids.
    """
    rules: list[Rule] = []
    ids: set[str] = set()
    ordinal = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        if not body.strip():
            continue
        ordinal += 1
        scan = _Scanner(body.rstrip(), lineno)
        rule = _parse_rule_line(scan, matrix, f"rule{ordinal}", comment.strip())
        if rule.id in ids:
            raise RuleError(f"duplicate rule id {rule.id!r}", lineno)
        ids.add(rule.id)
        rules.append(rule)
    return RuleSet(rules=tuple(rules), source=source)


def load_rules(path: str | Path, matrix: Matrix, source: str | None = None) -> RuleSet:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise RuleError(f"rule document not found: {path}") from None
    return parse_rules(text, matrix, source=source if source is not None else path.name)


def render_rules(ruleset: RuleSet) -> str:
    """Render back to DSL text; parse(render(rs)) is structurally equal."""
    return "\n".join(r.text() for r in ruleset.rules) + ("\n" if ruleset.rules else "")


def admissible(prompt: Prompt, rules: RuleSet | None) -> bool:
    """True unless some rule matches the prompt (every slot intersects it)."""
    return rules is None or rules.admits(prompt)


def count_admissible(space: PromptSpace, rules: RuleSet | None) -> int:
    """Exact count of admissible prompts by filtered enumeration.

    Enumerates each category-subset block only over the categories that the
    applicable rules actually touch; untouched categories multiply in, which
    keeps the default space interactive without changing exactness.
    """
    if rules is None or not rules.rules:
        return space.count
    matrix = space.matrix
    letters = matrix.letters
    total = 0
    for block in space.blocks:
        block_letters = {letters[p] for p in block.cats}
        applicable = [r for r in rules.rules if set(r.letters) <= block_letters]
        if not applicable:
            total += block.size
            continue
        touched = sorted(
            {matrix.position(l) for r in applicable for l in r.letters}
        )
        tindex = {pos: i for i, pos in enumerate(touched)}
        checks = []
        for r in applicable:
            checks.append(
                tuple(
                    (tindex[matrix.position(slot[0].category)],
                     frozenset(c.index - 1 for c in slot))
                    for slot in r.conjuncts
                )
            )
        free_factor = 1
        for p in block.cats:
            if p not in tindex:
                free_factor *= matrix.categories[p].size
        ranges = [range(matrix.categories[p].size) for p in touched]
        kept = 0
        for combo in itertools.product(*ranges):
            for check in checks:
                if all(combo[tp] in allowed for tp, allowed in check):
                    break  # some rule matched; prompt denied
            else:
                kept += 1
        total += kept * free_factor
    return total
