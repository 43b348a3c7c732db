"""Worksheets: a prompt paired with the critical-thinking question battery,
rendered to markdown or JSON for scenario-development work."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import Scenario
from .errors import BatteryError, IcarusError
from .matrix import Matrix
from .prompts import Prompt, parse_prompt

GROUP_ORDER = ("who", "why", "how", "what", "where", "when", "respond")


@dataclass(frozen=True)
class Question:
    id: str      # stable key like "who-1"
    text: str


@dataclass(frozen=True)
class QuestionGroup:
    key: str
    title: str
    questions: tuple[Question, ...]


def load_battery(source: str | Path | Mapping) -> tuple[QuestionGroup, ...]:
    """Load the question battery; groups must appear in the fixed order."""
    if isinstance(source, (str, Path)):
        path = Path(source)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise BatteryError(f"questions document not found: {path}") from None
        except json.JSONDecodeError as e:
            raise BatteryError(f"questions document {path}: invalid JSON ({e})") from None
    else:
        doc = source
    groups_doc = doc.get("groups") if isinstance(doc, Mapping) else None
    if not isinstance(groups_doc, list):
        raise BatteryError("questions document needs a 'groups' list")
    keys = [g.get("key") for g in groups_doc if isinstance(g, Mapping)]
    if tuple(keys) != GROUP_ORDER:
        raise BatteryError(
            f"groups must be exactly {list(GROUP_ORDER)} in order, found {keys}"
        )
    groups = []
    for g in groups_doc:
        questions = g.get("questions")
        if not isinstance(questions, list) or not questions:
            raise BatteryError(f"group {g.get('key')!r} has no questions")
        groups.append(
            QuestionGroup(
                key=str(g["key"]),
                title=str(g.get("title", g["key"])),
                questions=tuple(
                    Question(id=f"{g['key']}-{i}", text=str(q))
                    for i, q in enumerate(questions, start=1)
                ),
            )
        )
    return tuple(groups)


@dataclass
class Worksheet:
    prompt: Prompt
    groups: tuple[QuestionGroup, ...]
    scenario: Scenario | None = None
    created: str = ""
    notes: dict[str, str] = field(default_factory=dict)

    def question_ids(self) -> list[str]:
        return [q.id for g in self.groups for q in g.questions]


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def build_worksheet(
    prompt: Prompt,
    battery: Sequence[QuestionGroup],
    scenario: Scenario | None = None,
    created: str | None = None,
    notes: Mapping[str, str] | None = None,
) -> Worksheet:
    """Assemble a worksheet; pure given (prompt, battery, scenario, created)."""
    return Worksheet(
        prompt=prompt,
        groups=tuple(battery),
        scenario=scenario,
        created=created if created is not None else _now(),
        notes=dict(notes or {}),
    )


def worksheet_doc(ws: Worksheet) -> dict:
    return {
        "prompt": {
            "canonical": ws.prompt.canonical(),
            "cells": [
                {
                    "token": c.token,
                    "category": c.category,
                    "index": c.index,
                    "label": c.label,
                    "description": c.description,
                }
                for c in ws.prompt.cells
            ],
        },
        "scenario": ws.scenario.to_doc() if ws.scenario else None,
        "groups": [
            {
                "key": g.key,
                "title": g.title,
                "questions": [{"id": q.id, "text": q.text} for q in g.questions],
            }
            for g in ws.groups
        ],
        "created": ws.created,
        "notes": dict(ws.notes),
    }


def worksheet_from_doc(doc: Mapping, matrix: Matrix) -> Worksheet:
    """Inverse of the JSON rendering; round-trips losslessly."""
    prompt = parse_prompt(doc["prompt"]["canonical"], matrix)
    groups = tuple(
        QuestionGroup(
            key=g["key"],
            title=g["title"],
            questions=tuple(Question(id=q["id"], text=q["text"]) for q in g["questions"]),
        )
        for g in doc["groups"]
    )
    scenario = None
    sdoc = doc.get("scenario")
    if sdoc:
        from .corpus import Era, Locale, Scenario as _S

        tokens = sdoc.get("suggested_cells")
        scenario = _S(
            id=int(sdoc["id"]),
            title=sdoc["title"],
            tagline=sdoc.get("tagline", ""),
            era=Era(sdoc["era"]),
            locale=Locale(sdoc["locale"]),
            description=sdoc["description"],
            suggested_cells=tuple(matrix.cell(t) for t in tokens) if tokens else None,
        )
    return Worksheet(
        prompt=prompt,
        groups=groups,
        scenario=scenario,
        created=doc.get("created", ""),
        notes=dict(doc.get("notes", {})),
    )


def render_worksheet(ws: Worksheet, format: str = "markdown") -> str:
    """Render deterministically; format is 'markdown' (alias 'md') or 'json'."""
    if format == "json":
        return json.dumps(worksheet_doc(ws), indent=2, ensure_ascii=False) + "\n"
    if format not in ("markdown", "md"):
        raise IcarusError(f"unknown worksheet format {format!r}")
    lines = [f"# Worksheet: {ws.prompt.canonical()}", ""]
    if ws.scenario:
        lines += [f"Scenario {ws.scenario.id}: {ws.scenario.heading}", ""]
    lines += ["## Prompt", ""]
    for c in ws.prompt.cells:
        desc = f" {c.description}" if c.description else ""
        lines.append(f"- **{c.token} {c.label}**{desc}")
    lines.append("")
    if ws.created:
        lines += [f"Created: {ws.created}", ""]
    for g in ws.groups:
        lines += [f"## {g.title}", ""]
        for i, q in enumerate(g.questions, start=1):
            lines.append(f"{i}. {q.text}")
            answer = ws.notes.get(q.id, "")
            if answer:
                for row in answer.splitlines():
                    lines.append(f"   > {row}")
        lines.append("")
    return "\n".join(lines)
