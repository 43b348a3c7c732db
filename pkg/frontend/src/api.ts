// Typed client for the engine's HTTP API. Every number and string the UI
// displays originates from one of these responses; the client itself never
// computes combinatorics or evaluates rules.

export interface CellDoc {
  token: string;
  category: string;
  index: number;
  label: string;
  description: string;
}

export interface PromptDoc {
  rank: number;
  canonical: string;
  cells: CellDoc[];
}

export interface SampleDoc {
  seed: number;
  n: number;
  locks: string[];
  rules_id: string | null;
  prompts: PromptDoc[];
}

export interface SampleRequest {
  seed: number;
  n: number;
  locks: string[];
  rules_id: string | null;
}

export interface MatrixCellDoc {
  index: number;
  label: string;
  description: string;
}

export interface CategoryDoc {
  letter: string;
  name: string;
  cells: MatrixCellDoc[];
}

export interface MatrixDoc {
  source: string;
  categories: CategoryDoc[];
}

export interface RuleDoc {
  id: string;
  kind: string;
  conjuncts: string[][];
  rationale: string;
}

export interface RulesetDoc {
  id: string;
  source: string;
  rules: RuleDoc[];
}

export interface RulesListDoc {
  rulesets: RulesetDoc[];
}

export interface ScenarioDoc {
  id: number;
  title: string;
  tagline: string;
  era: string;
  locale: string;
  description: string;
  suggested_cells: string[] | null;
}

export interface ScenarioListDoc {
  scenarios: ScenarioDoc[];
}

export interface QuestionDoc {
  id: string;
  text: string;
}

export interface GroupDoc {
  key: string;
  title: string;
  questions: QuestionDoc[];
}

export interface WorksheetDoc {
  prompt: { canonical: string; cells: CellDoc[] };
  scenario: ScenarioDoc | null;
  groups: GroupDoc[];
  created: string;
  notes: Record<string, string>;
}

export interface SessionMetaDoc {
  id: string;
  seed: number;
  created: string;
}

export interface SessionListDoc {
  sessions: SessionMetaDoc[];
}

export interface DraftDoc {
  scenario_id: number | null;
  notes: Record<string, string>;
}

export interface SessionDoc {
  id: string;
  seed: number;
  created: string;
  last_seq: number;
  locks: Record<string, string>;
  explored: string[];
  drafts: Record<string, DraftDoc>;
}

export interface EventDoc {
  seq: number;
  at: string;
  kind: string;
  payload: Record<string, unknown>;
}

export interface CoverageDoc {
  cell_usage: Record<string, number>;
  pairs_covered: number;
  pairs_total: number;
  pair_coverage: number;
  explored: number;
  admissible: number;
}

export interface SuggestionDoc {
  prompt: PromptDoc;
  new_pairs: number;
  complete: boolean;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** Thrown when the server cannot be reached at all. */
export class TransportError extends Error {
  constructor(readonly cause: unknown) {
    super("server unreachable");
    this.name = "TransportError";
  }
}

async function toApiError(res: Response): Promise<ApiError> {
  let code = "http-error";
  let message = `${res.status} ${res.statusText}`;
  try {
    const body = await res.json();
    if (body && typeof body.code === "string") code = body.code;
    if (body && typeof body.message === "string") message = body.message;
  } catch {
    // non-JSON error body; keep the status line
  }
  return new ApiError(res.status, code, message);
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let res: Response;
    try {
      res = await fetch(this.base + path, init);
    } catch (err) {
      throw new TransportError(err);
    }
    if (!res.ok) throw await toApiError(res);
    return (await res.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getMatrix(): Promise<MatrixDoc> {
    return this.request("/api/matrix");
  }

  getRules(): Promise<RulesListDoc> {
    return this.request("/api/rules");
  }

  sample(req: SampleRequest): Promise<SampleDoc> {
    return this.post("/api/sample", req);
  }

  getScenarios(params: Record<string, string> = {}): Promise<ScenarioListDoc> {
    const qs = new URLSearchParams(params).toString();
    return this.request(`/api/scenarios${qs ? `?${qs}` : ""}`);
  }

  buildWorksheet(prompt: string, scenarioId?: number | null): Promise<WorksheetDoc> {
    return this.post("/api/worksheets", {
      prompt,
      scenario_id: scenarioId ?? null,
    });
  }

  createSession(seed: number): Promise<SessionMetaDoc> {
    return this.post("/api/sessions", { seed });
  }

  listSessions(): Promise<SessionListDoc> {
    return this.request("/api/sessions");
  }

  getSession(id: string): Promise<SessionDoc> {
    return this.request(`/api/sessions/${encodeURIComponent(id)}`);
  }

  appendEvent(
    id: string,
    seq: number,
    kind: string,
    payload: Record<string, unknown>,
  ): Promise<EventDoc> {
    return this.post(`/api/sessions/${encodeURIComponent(id)}/events`, {
      seq,
      kind,
      payload,
    });
  }

  getCoverage(id: string): Promise<CoverageDoc> {
    return this.request(`/api/sessions/${encodeURIComponent(id)}/coverage`);
  }

  getSuggestion(id: string, seed: number): Promise<SuggestionDoc> {
    return this.request(
      `/api/sessions/${encodeURIComponent(id)}/suggest?seed=${seed}`,
    );
  }
}
