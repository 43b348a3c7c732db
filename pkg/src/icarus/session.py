"""Facilitation sessions: an append-only event journal plus pure folds that
derive locks, the explored-prompt set, draft worksheets, and coverage."""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping

from .errors import NotFoundError, SampleError, SeqConflictError, SessionError
from .matrix import Matrix
from .prompts import Prompt, PromptSpace, parse_prompt, sample_up_to
from .rules import RuleSet, count_admissible

EVENT_KINDS = ("draw", "lock", "unlock", "reroll", "draft_save", "note")

SUGGEST_POOL = 256


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class SessionEvent:
    seq: int
    at: str
    kind: str
    payload: dict

    def to_doc(self) -> dict:
        return {"seq": self.seq, "at": self.at, "kind": self.kind, "payload": self.payload}


@dataclass
class SessionState:
    """Derived state: a pure fold over the journal."""

    last_seq: int = 0
    locks: dict[str, str] = field(default_factory=dict)      # letter -> cell token
    explored: set[str] = field(default_factory=set)          # canonical forms
    drafts: dict[str, dict] = field(default_factory=dict)    # canonical -> draft payload

    def apply(self, event: SessionEvent) -> None:
        self.last_seq = event.seq
        kind, payload = event.kind, event.payload
        if kind == "lock":
            token = payload["cell"]
            self.locks[_letter(token)] = token
        elif kind == "unlock":
            self.locks.pop(_letter(payload["cell"]), None)
        elif kind in ("draw", "reroll"):
            self.explored.add(payload["prompt"])
        elif kind == "draft_save":
            canonical = payload["prompt"]
            self.explored.add(canonical)
            self.drafts[canonical] = {
                "scenario_id": payload.get("scenario_id"),
                "notes": dict(payload.get("notes", {})),
            }
        # "note" events carry commentary only; no state change


def _letter(token: str) -> str:
    return token[:1]


@dataclass
class Session:
    id: str
    seed: int
    created: str
    events: list[SessionEvent] = field(default_factory=list)
    state: SessionState = field(default_factory=SessionState)

    @classmethod
    def new(cls, seed: int, session_id: str | None = None, created: str | None = None) -> "Session":
        return cls(
            id=session_id or secrets.token_hex(8),
            seed=int(seed),
            created=created or _now(),
        )

    def append(self, event: SessionEvent) -> None:
        if event.seq != self.state.last_seq + 1:
            raise SeqConflictError(
                f"expected seq {self.state.last_seq + 1}, got {event.seq}"
            )
        self.events.append(event)
        self.state.apply(event)


def validate_payload(kind: str, payload: Mapping, matrix: Matrix | None = None) -> dict:
    """Normalize an event payload; raises SessionError when malformed."""
    if kind not in EVENT_KINDS:
        raise SessionError(f"unknown event kind {kind!r}")
    if not isinstance(payload, Mapping):
        raise SessionError("payload must be an object")
    out = dict(payload)

    def canonical_prompt(value) -> str:
        if not isinstance(value, str):
            raise SessionError(f"{kind} payload needs a 'prompt' string")
        if matrix is not None:
            return parse_prompt(value, matrix).canonical()
        return value

    if kind in ("lock", "unlock"):
        token = out.get("cell")
        if not isinstance(token, str):
            raise SessionError(f"{kind} payload needs a 'cell' token")
        if matrix is not None:
            token = matrix.cell(token).token
        out["cell"] = token
    elif kind == "draw":
        out["prompt"] = canonical_prompt(out.get("prompt"))
        if "seed" in out and not isinstance(out["seed"], int):
            raise SessionError("draw 'seed' must be an integer")
    elif kind == "reroll":
        out["prompt"] = canonical_prompt(out.get("prompt"))
        cats = out.get("categories")
        if not isinstance(cats, list) or not all(isinstance(c, str) for c in cats):
            raise SessionError("reroll payload needs a 'categories' list")
    elif kind == "draft_save":
        out["prompt"] = canonical_prompt(out.get("prompt"))
        notes = out.get("notes", {})
        if not isinstance(notes, Mapping) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in notes.items()
        ):
            raise SessionError("draft_save 'notes' must map question ids to strings")
        out["notes"] = dict(notes)
    elif kind == "note":
        if not isinstance(out.get("text"), str):
            raise SessionError("note payload needs a 'text' string")
    return out


def session_replay(events: Iterable[SessionEvent | Mapping]) -> SessionState:
    """Fold a journal (events or their documents) into derived state."""
    state = SessionState()
    for ev in events:
        if isinstance(ev, Mapping):
            ev = SessionEvent(
                seq=int(ev["seq"]), at=str(ev["at"]), kind=str(ev["kind"]),
                payload=dict(ev["payload"]),
            )
        if ev.seq != state.last_seq + 1:
            raise SeqConflictError(f"journal jumps from seq {state.last_seq} to {ev.seq}")
        if ev.kind not in EVENT_KINDS:
            raise SessionError(f"unknown event kind {ev.kind!r}")
        state.apply(ev)
    return state


class SessionStore:
    """One journal file per session under a root directory.

    Layout: <root>/<id>.json holds {id, seed, created}; <root>/<id>.jsonl
    holds one event per line. Appends are serialized per session id.
    """

    def __init__(self, root: str | Path, matrix: Matrix | None = None):
        self.root = Path(root)
        self.matrix = matrix
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._guard:
            return self._locks.setdefault(session_id, threading.Lock())

    def _meta_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.json"

    def _journal_path(self, session_id: str) -> Path:
        return self.root / f"{session_id}.jsonl"

    def create(self, seed: int) -> Session:
        self.root.mkdir(parents=True, exist_ok=True)
        session = Session.new(seed)
        meta = {"id": session.id, "seed": session.seed, "created": session.created}
        self._meta_path(session.id).write_text(
            json.dumps(meta) + "\n", encoding="utf-8"
        )
        self._journal_path(session.id).touch()
        return session

    def list_ids(self) -> list[dict]:
        if not self.root.is_dir():
            return []
        out = []
        for path in sorted(self.root.glob("*.json")):
            try:
                out.append(json.loads(path.read_text(encoding="utf-8")))
            except (OSError, json.JSONDecodeError):
                continue
        out.sort(key=lambda m: (m.get("created", ""), m.get("id", "")))
        return out

    def get(self, session_id: str) -> Session:
        meta_path = self._meta_path(session_id)
        if not meta_path.is_file():
            raise NotFoundError(f"no session {session_id!r}")
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        session = Session(
            id=meta["id"], seed=int(meta["seed"]), created=meta["created"]
        )
        journal = self._journal_path(session_id)
        if journal.is_file():
            with journal.open(encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, start=1):
                    if not line.strip():
                        continue
                    try:
                        doc = json.loads(line)
                    except json.JSONDecodeError:
                        raise SessionError(
                            f"session {session_id}: bad journal line {lineno}"
                        ) from None
                    session.append(
                        SessionEvent(
                            seq=int(doc["seq"]), at=str(doc["at"]),
                            kind=str(doc["kind"]), payload=dict(doc["payload"]),
                        )
                    )
        return session

    def append(self, session_id: str, seq: int, kind: str, payload: Mapping,
               at: str | None = None) -> SessionEvent:
        """Validate and append one event; returns the stored record."""
        with self._lock_for(session_id):
            session = self.get(session_id)
            if seq != session.state.last_seq + 1:
                raise SeqConflictError(
                    f"expected seq {session.state.last_seq + 1}, got {seq}"
                )
            event = SessionEvent(
                seq=seq, at=at or _now(), kind=kind,
                payload=validate_payload(kind, payload, self.matrix),
            )
            with self._journal_path(session_id).open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(event.to_doc(), ensure_ascii=False) + "\n")
            return event


@dataclass(frozen=True)
class CoverageReport:
    cell_usage: dict[str, int]
    pairs_covered: int
    pairs_total: int
    pair_coverage: float
    explored: int
    admissible: int

    def to_doc(self) -> dict:
        return {
            "cell_usage": dict(sorted(self.cell_usage.items())),
            "pairs_covered": self.pairs_covered,
            "pairs_total": self.pairs_total,
            "pair_coverage": self.pair_coverage,
            "explored": self.explored,
            "admissible": self.admissible,
        }


def prompt_pairs(canonical: str) -> set[frozenset[str]]:
    """Unordered cross-category token pairs present in one canonical form."""
    tokens = canonical.split("+")
    return {
        frozenset((a, b))
        for i, a in enumerate(tokens)
        for b in tokens[i + 1:]
    }


def total_pairs(space: PromptSpace) -> int:
    sizes = [c.size for c in space.matrix.categories]
    total = 0
    for i, a in enumerate(sizes):
        for b in sizes[i + 1:]:
            total += a * b
    return total


def coverage(
    state: SessionState,
    space: PromptSpace,
    rules: RuleSet | None = None,
    admissible_count: int | None = None,
) -> CoverageReport:
    """Coverage statistics over the session's explored prompts."""
    usage: dict[str, int] = {}
    covered: set[frozenset[str]] = set()
    for canonical in state.explored:
        for token in canonical.split("+"):
            usage[token] = usage.get(token, 0) + 1
        covered |= prompt_pairs(canonical)
    total = total_pairs(space)
    if admissible_count is None:
        admissible_count = count_admissible(space, rules)
    return CoverageReport(
        cell_usage=usage,
        pairs_covered=len(covered),
        pairs_total=total,
        pair_coverage=(len(covered) / total) if total else 0.0,
        explored=len(state.explored),
        admissible=admissible_count,
    )


@dataclass(frozen=True)
class Suggestion:
    prompt: Prompt
    new_pairs: int
    complete: bool  # no candidate in the pool adds an uncovered pair


def suggest_next(
    state: SessionState,
    space: PromptSpace,
    rules: RuleSet | None,
    seed: int,
    pool_size: int = SUGGEST_POOL,
) -> Suggestion:
    """Greedy breadth helper: from a seeded pool of admissible candidates
    honoring the session's locks, pick the prompt covering the most new
    cross-category pairs; ties break toward the lower rank."""
    candidates = sample_up_to(space, seed, pool_size, locks=state.locks.values(), rules=rules)
    if not candidates:
        raise SampleError("no admissible prompt under the current locks")
    covered: set[frozenset[str]] = set()
    for canonical in state.explored:
        covered |= prompt_pairs(canonical)
    best = None
    best_key = None
    for p in candidates:
        new = len(prompt_pairs(p.canonical()) - covered)
        key = (-new, space.rank(p))
        if best_key is None or key < best_key:
            best, best_key = p, key
    return Suggestion(prompt=best, new_pairs=-best_key[0], complete=best_key[0] == 0)
