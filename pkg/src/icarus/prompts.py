"""Prompt combinatorics: counting, canonical ordering, rank/unrank,
enumeration, and seeded sampling.

Canonical order over a space: category subsets ordered by size ascending,
ties broken lexicographically by category letters; within one subset the
prompts follow mixed-radix order over 0-based cell indices with the leftmost
category most significant. The first prompt of the default space is A1+B1
at rank 0.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import PromptError, RangeError, SampleError
from .matrix import Cell, Matrix
from .rng import Xoshiro256StarStar

MAX_COUNT = (1 << 63) - 1  # documented signed 64-bit bound for counts/ranks


class Prompt:
    """One cell from each of several distinct categories."""

    __slots__ = ("cells",)

    def __init__(self, cells: Iterable[Cell]):
        ordered = sorted(cells, key=lambda c: c.category)
        if not ordered:
            raise PromptError("a prompt needs at least one cell")
        letters = [c.category for c in ordered]
        for a, b in zip(letters, letters[1:]):
            if a == b:
                raise PromptError(f"more than one cell from category {a}")
        self.cells = tuple(ordered)

    @classmethod
    def _make(cls, ordered_cells: tuple[Cell, ...]) -> "Prompt":
        # trusted fast path: cells already sorted and category-distinct
        p = object.__new__(cls)
        p.cells = ordered_cells
        return p

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(c.category for c in self.cells)

    @property
    def cell_map(self) -> dict[str, Cell]:
        return {c.category: c for c in self.cells}

    def canonical(self) -> str:
        return "+".join(c.token for c in self.cells)

    def __len__(self):
        return len(self.cells)

    def __eq__(self, other):
        return isinstance(other, Prompt) and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)

    def __repr__(self):
        return f"<Prompt {self.canonical()}>"


def parse_prompt(text: str, matrix: Matrix) -> Prompt:
    """Parse the canonical '+'-joined form, e.g. 'A7+B12+E16'."""
    tokens = [t.strip() for t in text.split("+")]
    if not text.strip() or any(not t for t in tokens):
        raise PromptError(f"malformed prompt {text!r}")
    return Prompt(matrix.cell(t) for t in tokens)


@dataclass(frozen=True, slots=True)
class _Block:
    cats: tuple[int, ...]     # category positions, ascending
    sizes: tuple[int, ...]
    weights: tuple[int, ...]  # mixed-radix place values, leftmost most significant
    size: int
    start: int


def _make_blocks(all_sizes, kmin, kmax, positions):
    blocks = []
    start = 0
    for k in range(kmin, kmax + 1):
        for cats in itertools.combinations(positions, k):
            sizes = tuple(all_sizes[p] for p in cats)
            weights = []
            w = 1
            for s in reversed(sizes):
                weights.append(w)
                w *= s
            weights.reverse()
            size = w
            blocks.append(_Block(cats, sizes, tuple(weights), size, start))
            start += size
    return blocks, start


class PromptSpace:
    """A matrix plus the allowed range of categories per prompt."""

    __slots__ = ("matrix", "kmin", "kmax", "blocks", "count", "_block_at", "_starts")

    def __init__(self, matrix: Matrix, kmin: int = 2, kmax: int = 5):
        n = len(matrix.categories)
        if not (isinstance(kmin, int) and isinstance(kmax, int)):
            raise RangeError("kmin and kmax must be integers")
        if not 1 <= kmin <= kmax <= n:
            raise RangeError(
                f"k-range [{kmin}, {kmax}] invalid for a matrix with {n} categories"
            )
        self.matrix = matrix
        self.kmin = kmin
        self.kmax = kmax
        sizes = [c.size for c in matrix.categories]
        self.blocks, self.count = _make_blocks(sizes, kmin, kmax, range(n))
        if self.count > MAX_COUNT:
            raise RangeError("prompt space exceeds the 63-bit count limit")
        self._block_at = {b.cats: b for b in self.blocks}
        self._starts = [b.start for b in self.blocks]

    def _resolve(self, prompt: Prompt) -> list[tuple[int, Cell]]:
        out = []
        for cell in prompt.cells:
            if not self.matrix.has_category(cell.category):
                raise PromptError(f"cell {cell.token} is not in the matrix")
            if self.matrix.cell(cell.token) != cell:
                raise PromptError(f"cell {cell.token} is not in the matrix")
            out.append((self.matrix.position(cell.category), cell))
        return out

    def rank(self, prompt: Prompt) -> int:
        resolved = self._resolve(prompt)
        k = len(resolved)
        if not self.kmin <= k <= self.kmax:
            raise PromptError(
                f"prompt spans {k} categories, outside [{self.kmin}, {self.kmax}]"
            )
        cats = tuple(pos for pos, _ in resolved)
        block = self._block_at[cats]
        value = 0
        for (pos, cell), w in zip(resolved, block.weights):
            value += (cell.index - 1) * w
        return block.start + value

    def unrank(self, index: int) -> Prompt:
        if not isinstance(index, int) or not 0 <= index < self.count:
            raise RangeError(f"rank {index} outside [0, {self.count})")
        b = self.blocks[bisect_right(self._starts, index) - 1]
        rem = index - b.start
        cells = []
        for pos, w in zip(b.cats, b.weights):
            digit, rem = divmod(rem, w)
            cells.append(self.matrix.categories[pos].cells[digit])
        return Prompt._make(tuple(cells))


def count_prompts(space: PromptSpace) -> int:
    """Total number of prompts in the space (exact integer arithmetic)."""
    return space.count


def enumerate_prompts(space: PromptSpace, start: int = 0, stop: int | None = None) -> Iterator[Prompt]:
    """Yield prompts at ranks [start, stop) in order, lazily."""
    if stop is None:
        stop = space.count
    if not (isinstance(start, int) and isinstance(stop, int)) or not 0 <= start <= stop <= space.count:
        raise RangeError(f"range [{start}, {stop}) outside [0, {space.count}]")
    make = Prompt._make
    for b in space.blocks:
        if b.start + b.size <= start:
            continue
        if b.start >= stop:
            break
        lists = [space.matrix.categories[p].cells for p in b.cats]
        combos = itertools.product(*lists)
        lo = max(start - b.start, 0)
        hi = min(stop - b.start, b.size)
        if lo > 0 or hi < b.size:
            combos = itertools.islice(combos, lo, hi)
        for combo in combos:
            yield make(combo)


class _View:
    """The sub-space of prompts containing every locked cell."""

    __slots__ = ("space", "locked", "blocks", "count", "_starts")

    def __init__(self, space: PromptSpace, locked: dict[int, Cell]):
        self.space = space
        self.locked = locked
        need = set(locked)
        blocks = []
        start = 0
        for b in space.blocks:
            if not need.issubset(b.cats):
                continue
            free = tuple(p for p in b.cats if p not in locked)
            sizes = tuple(space.matrix.categories[p].size for p in free)
            weights = []
            w = 1
            for s in reversed(sizes):
                weights.append(w)
                w *= s
            weights.reverse()
            blocks.append(_Block(b.cats, sizes, tuple(weights), w, start))
            # _Block.cats holds the full subset; free positions are recomputed on decode
            start += w
        self.blocks = blocks
        self.count = start
        self._starts = [b.start for b in blocks]

    def unrank(self, index: int) -> Prompt:
        b = self.blocks[bisect_right(self._starts, index) - 1]
        rem = index - b.start
        cells = []
        wi = 0
        for pos in b.cats:
            cell = self.locked.get(pos)
            if cell is None:
                digit, rem = divmod(rem, b.weights[wi])
                wi += 1
                cell = self.space.matrix.categories[pos].cells[digit]
            cells.append(cell)
        return Prompt._make(tuple(cells))

    def iter_all(self) -> Iterator[Prompt]:
        make = Prompt._make
        for b in self.blocks:
            lists = []
            for pos in b.cats:
                cell = self.locked.get(pos)
                lists.append((cell,) if cell is not None else self.space.matrix.categories[pos].cells)
            for combo in itertools.product(*lists):
                yield make(combo)


def _normalize_locks(locks, matrix: Matrix) -> dict[int, Cell]:
    if not locks:
        return {}
    if isinstance(locks, Mapping):
        items = locks.values()
    else:
        items = locks
    out: dict[int, Cell] = {}
    for item in items:
        cell = item if isinstance(item, Cell) else matrix.cell(str(item))
        if matrix.cell(cell.token) != cell:
            raise PromptError(f"cell {cell.token} is not in the matrix")
        pos = matrix.position(cell.category)
        if pos in out and out[pos] != cell:
            raise PromptError(f"conflicting locks for category {cell.category}")
        out[pos] = cell
    return out


def _locks_denied(locked: dict[int, Cell], rules) -> str | None:
    """Return the id of a rule the locks alone already satisfy, if any."""
    if rules is None:
        return None
    locked_cells = set(locked.values())
    for rule in getattr(rules, "rules", ()):
        if all(any(c in locked_cells for c in slot) for slot in rule.conjuncts):
            return rule.id
    return None


# exhaustive selection is exact and cheap below this sub-space size
_EXHAUSTIVE_LIMIT = 4096


def _select(rng: Xoshiro256StarStar, pool: list[Prompt], n: int) -> list[Prompt]:
    # partial Fisher-Yates: uniform ordered selection of n from pool
    pool = list(pool)
    for i in range(n):
        j = i + rng.below(len(pool) - i)
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:n]


def _draw(space, seed, n, locks, rules, strict):
    if not isinstance(n, int) or n < 0:
        raise SampleError(f"sample size must be a non-negative integer, got {n!r}")
    if not isinstance(seed, int) or not 0 <= seed < (1 << 64):
        raise RangeError("seed must be an unsigned 64-bit integer")
    locked = _normalize_locks(locks, space.matrix)
    if len(locked) > space.kmax:
        raise SampleError(
            f"{len(locked)} locked categories exceed kmax={space.kmax}"
        )
    rule_id = _locks_denied(locked, rules)
    if rule_id is not None:
        raise SampleError(
            f"infeasible locks: rule {rule_id!r} denies every completion"
        )
    view = _View(space, locked)
    if strict and n > view.count:
        raise SampleError(
            f"requested {n} prompts but the locked sub-space holds {view.count}"
        )
    admits = rules.admits if rules is not None else None
    if n == 0:
        return []
    rng = Xoshiro256StarStar(seed)
    if view.count <= _EXHAUSTIVE_LIMIT:
        pool = [p for p in view.iter_all() if admits is None or admits(p)]
        return _finish(rng, pool, n, strict)
    results: list[Prompt] = []
    seen: set[str] = set()
    budget = 512 + 64 * n
    attempts = 0
    while len(results) < n:
        if attempts >= budget:
            # dense filter or tiny admissible set: finish exactly
            pool = [
                p for p in view.iter_all()
                if p.canonical() not in seen and (admits is None or admits(p))
            ]
            results.extend(_finish(rng, pool, n - len(results), strict))
            break
        attempts += 1
        p = view.unrank(rng.below(view.count))
        c = p.canonical()
        if c in seen:
            continue
        if admits is not None and not admits(p):
            continue
        seen.add(c)
        results.append(p)
    return results


def _finish(rng, pool, n, strict):
    if n > len(pool):
        if strict:
            raise SampleError(
                f"requested {n} prompts but only {len(pool)} are admissible"
            )
        n = len(pool)
    return _select(rng, pool, n)


def sample(space: PromptSpace, seed: int, n: int, locks=None, rules=None) -> list[Prompt]:
    """Uniform without-replacement sample of n distinct admissible prompts.

    Locked cells appear in every returned prompt. Fully deterministic given
    (space, seed, n, locks, rules): uniform ranks are drawn over the
    lock-restricted sub-space and rejected against the rule filter and the
    already-drawn set; small sub-spaces (and exhausted rejection budgets)
    switch to exact filtered enumeration plus a partial Fisher-Yates pick,
    which preserves uniformity. Raises SampleError if n exceeds the
    admissible count or the locks are infeasible under the rules.
    """
    return _draw(space, seed, n, locks, rules, strict=True)


def sample_up_to(space: PromptSpace, seed: int, n: int, locks=None, rules=None) -> list[Prompt]:
    """Like sample() but returns fewer than n prompts when the admissible
    sub-space is smaller than n instead of raising."""
    return _draw(space, seed, n, locks, rules, strict=False)
