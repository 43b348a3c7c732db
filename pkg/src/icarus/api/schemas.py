"""Request and response bodies for the HTTP API.

Response models double as the canonical JSON document shapes: the CLI's
--format json output serializes these same models, so API bodies and CLI
documents always agree.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

MAX_SEED = (1 << 64) - 1


# ---- requests ----

class SampleRequest(BaseModel):
    seed: int = Field(ge=0, le=MAX_SEED)
    n: int = Field(ge=0)
    locks: list[str] = Field(default_factory=list)
    rules_id: str | None = None


class RulesCheckRequest(BaseModel):
    text: str


class WorksheetRequest(BaseModel):
    prompt: str
    scenario_id: int | None = None


class SessionCreateRequest(BaseModel):
    seed: int = Field(default=0, ge=0, le=MAX_SEED)


class EventAppendRequest(BaseModel):
    seq: int = Field(ge=1)
    kind: str
    payload: dict = Field(default_factory=dict)


# ---- responses ----

class CellDoc(BaseModel):
    token: str
    category: str
    index: int
    label: str
    description: str = ""

    @classmethod
    def from_cell(cls, cell) -> "CellDoc":
        return cls(
            token=cell.token, category=cell.category, index=cell.index,
            label=cell.label, description=cell.description,
        )


class MatrixCellDoc(BaseModel):
    index: int
    label: str
    description: str = ""


class CategoryDoc(BaseModel):
    letter: str
    name: str
    cells: list[MatrixCellDoc]


class MatrixDoc(BaseModel):
    source: str
    categories: list[CategoryDoc]


class CountDoc(BaseModel):
    count: int


class PromptDoc(BaseModel):
    rank: int
    canonical: str
    cells: list[CellDoc]

    @classmethod
    def from_prompt(cls, space, prompt) -> "PromptDoc":
        return cls(
            rank=space.rank(prompt),
            canonical=prompt.canonical(),
            cells=[CellDoc.from_cell(c) for c in prompt.cells],
        )


class SampleDoc(BaseModel):
    seed: int
    n: int
    locks: list[str]
    rules_id: str | None
    prompts: list[PromptDoc]


class RuleDoc(BaseModel):
    id: str
    kind: str
    conjuncts: list[list[str]]
    rationale: str = ""

    @classmethod
    def from_rule(cls, rule) -> "RuleDoc":
        return cls(
            id=rule.id,
            kind=rule.kind,
            conjuncts=[[c.token for c in slot] for slot in rule.conjuncts],
            rationale=rule.rationale,
        )


class RulesetDoc(BaseModel):
    id: str
    source: str
    rules: list[RuleDoc]


class RulesListDoc(BaseModel):
    rulesets: list[RulesetDoc]


class RulesCheckDoc(BaseModel):
    ok: bool
    count: int
    rules: list[RuleDoc]


class ScenarioDoc(BaseModel):
    id: int
    title: str
    tagline: str
    era: str
    locale: str
    description: str
    suggested_cells: list[str] | None = None

    @classmethod
    def from_scenario(cls, s) -> "ScenarioDoc":
        return cls(**s.to_doc())


class ScenarioListDoc(BaseModel):
    scenarios: list[ScenarioDoc]


class QuestionDoc(BaseModel):
    id: str
    text: str


class GroupDoc(BaseModel):
    key: str
    title: str
    questions: list[QuestionDoc]


class WorksheetPromptDoc(BaseModel):
    canonical: str
    cells: list[CellDoc]


class WorksheetDoc(BaseModel):
    prompt: WorksheetPromptDoc
    scenario: ScenarioDoc | None
    groups: list[GroupDoc]
    created: str
    notes: dict[str, str]

    @classmethod
    def from_worksheet(cls, ws) -> "WorksheetDoc":
        from ..worksheet import worksheet_doc

        return cls(**worksheet_doc(ws))


class SessionMetaDoc(BaseModel):
    id: str
    seed: int
    created: str


class SessionListDoc(BaseModel):
    sessions: list[SessionMetaDoc]


class DraftDoc(BaseModel):
    scenario_id: int | None = None
    notes: dict[str, str] = Field(default_factory=dict)


class SessionDoc(BaseModel):
    id: str
    seed: int
    created: str
    last_seq: int
    locks: dict[str, str]
    explored: list[str]
    drafts: dict[str, DraftDoc]

    @classmethod
    def from_session(cls, session) -> "SessionDoc":
        st = session.state
        return cls(
            id=session.id,
            seed=session.seed,
            created=session.created,
            last_seq=st.last_seq,
            locks=dict(sorted(st.locks.items())),
            explored=sorted(st.explored),
            drafts={k: DraftDoc(**v) for k, v in sorted(st.drafts.items())},
        )


class EventDoc(BaseModel):
    seq: int
    at: str
    kind: str
    payload: dict


class CoverageDoc(BaseModel):
    cell_usage: dict[str, int]
    pairs_covered: int
    pairs_total: int
    pair_coverage: float
    explored: int
    admissible: int


class SuggestionDoc(BaseModel):
    prompt: PromptDoc
    new_pairs: int
    complete: bool


class ErrorDoc(BaseModel):
    status: int
    code: str
    message: str
