"""FastAPI application: a local HTTP facade over the engine.

All state is read-only after startup except session journals, whose appends
are serialized per session id by the store. Randomness comes exclusively
from client-supplied seeds.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from ..corpus import bucket_counts, query
from ..errors import IcarusError, NotFoundError, RangeError
from ..prompts import parse_prompt, sample
from ..rules import parse_rules
from ..session import coverage, suggest_next
from ..worksheet import build_worksheet
from ..workspace import Workspace
from . import schemas as S

_STATUS_BY_CODE = {
    "not-found": 404,
    "seq-conflict": 409,
}


def _status_for(err: IcarusError) -> int:
    return _STATUS_BY_CODE.get(err.code, 400)


def create_app(workspace: Workspace | None = None) -> FastAPI:
    ws = workspace if workspace is not None else Workspace()
    app = FastAPI(title="icarus", version="0.1.0", docs_url="/docs")
    app.state.workspace = ws
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(IcarusError)
    async def _domain_error(_req: Request, err: IcarusError):
        status = _status_for(err)
        return JSONResponse(
            status_code=status,
            content={"status": status, "code": err.code, "message": str(err)},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, err: RequestValidationError):
        first = err.errors()[0] if err.errors() else {}
        loc = ".".join(str(p) for p in first.get("loc", ()))
        msg = f"{loc}: {first.get('msg', 'invalid request')}" if loc else "invalid request"
        return JSONResponse(
            status_code=422,
            content={"status": 422, "code": "invalid-request", "message": msg},
        )

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(_req: Request, err: StarletteHTTPException):
        return JSONResponse(
            status_code=err.status_code,
            content={
                "status": err.status_code,
                "code": "http-error",
                "message": str(err.detail),
            },
        )

    @app.get("/api/matrix", response_model=S.MatrixDoc)
    def get_matrix():
        return ws.matrix.to_doc()

    @app.get("/api/count", response_model=S.CountDoc)
    def get_count(kmin: int = 2, kmax: int = 5):
        return {"count": ws.space(kmin, kmax).count}

    @app.post("/api/sample", response_model=S.SampleDoc)
    def post_sample(req: S.SampleRequest):
        space = ws.default_space
        rules = ws.ruleset(req.rules_id)
        prompts = sample(space, req.seed, req.n, locks=req.locks, rules=rules)
        return S.SampleDoc(
            seed=req.seed,
            n=req.n,
            locks=[space.matrix.cell(t).token for t in req.locks],
            rules_id=req.rules_id,
            prompts=[S.PromptDoc.from_prompt(space, p) for p in prompts],
        )

    @app.get("/api/prompts/{rank}", response_model=S.PromptDoc)
    def get_prompt(rank: int):
        space = ws.default_space
        try:
            prompt = space.unrank(rank)
        except RangeError as e:
            raise NotFoundError(str(e)) from None
        return S.PromptDoc.from_prompt(space, prompt)

    @app.get("/api/rules", response_model=S.RulesListDoc)
    def get_rules():
        return S.RulesListDoc(
            rulesets=[
                S.RulesetDoc(
                    id=rid,
                    source=rs.source,
                    rules=[S.RuleDoc.from_rule(r) for r in rs.rules],
                )
                for rid, rs in ws.rulesets.items()
            ]
        )

    @app.post("/api/rules", response_model=S.RulesCheckDoc)
    def post_rules(req: S.RulesCheckRequest):
        rs = parse_rules(req.text, ws.matrix, source="upload")
        return S.RulesCheckDoc(
            ok=True, count=len(rs), rules=[S.RuleDoc.from_rule(r) for r in rs.rules]
        )

    @app.get("/api/scenarios", response_model=S.ScenarioListDoc)
    def get_scenarios(era: str | None = None, locale: str | None = None,
                      q: str | None = None, cell: str | None = None):
        token = ws.matrix.cell(cell).token if cell else None
        found = query(ws.corpus, era=era, locale=locale, text=q, cell=token)
        return S.ScenarioListDoc(
            scenarios=[S.ScenarioDoc.from_scenario(s) for s in found]
        )

    @app.get("/api/scenarios/buckets")
    def get_buckets():
        return bucket_counts(ws.corpus)

    @app.get("/api/scenarios/{scenario_id}", response_model=S.ScenarioDoc)
    def get_scenario(scenario_id: int):
        return S.ScenarioDoc.from_scenario(ws.scenario(scenario_id))

    @app.post("/api/worksheets", response_model=S.WorksheetDoc)
    def post_worksheet(req: S.WorksheetRequest):
        space = ws.default_space
        prompt = parse_prompt(req.prompt, ws.matrix)
        space.rank(prompt)  # validates cardinality against the space
        scenario = ws.scenario(req.scenario_id) if req.scenario_id is not None else None
        sheet = build_worksheet(prompt, ws.battery, scenario=scenario)
        return S.WorksheetDoc.from_worksheet(sheet)

    @app.post("/api/sessions", response_model=S.SessionMetaDoc)
    def post_session(req: S.SessionCreateRequest):
        session = ws.sessions.create(req.seed)
        return S.SessionMetaDoc(id=session.id, seed=session.seed, created=session.created)

    @app.get("/api/sessions", response_model=S.SessionListDoc)
    def list_sessions():
        return S.SessionListDoc(
            sessions=[S.SessionMetaDoc(**m) for m in ws.sessions.list_ids()]
        )

    @app.get("/api/sessions/{session_id}", response_model=S.SessionDoc)
    def get_session(session_id: str):
        return S.SessionDoc.from_session(ws.sessions.get(session_id))

    @app.post("/api/sessions/{session_id}/events", response_model=S.EventDoc)
    def post_event(session_id: str, req: S.EventAppendRequest):
        event = ws.sessions.append(session_id, req.seq, req.kind, req.payload)
        return S.EventDoc(**event.to_doc())

    @app.get("/api/sessions/{session_id}/coverage", response_model=S.CoverageDoc)
    def get_coverage(session_id: str):
        session = ws.sessions.get(session_id)
        space = ws.default_space
        report = coverage(
            session.state, space, ws.default_rules,
            admissible_count=ws.admissible_count(space, "default"),
        )
        return S.CoverageDoc(**report.to_doc())

    @app.get("/api/sessions/{session_id}/suggest", response_model=S.SuggestionDoc)
    def get_suggest(session_id: str, seed: int = 0):
        session = ws.sessions.get(session_id)
        space = ws.default_space
        suggestion = suggest_next(session.state, space, ws.default_rules, seed)
        return S.SuggestionDoc(
            prompt=S.PromptDoc.from_prompt(space, suggestion.prompt),
            new_pairs=suggestion.new_pairs,
            complete=suggestion.complete,
        )

    return app
