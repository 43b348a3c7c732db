// Shared client state: the journal handle (append with one retry on seq
// conflict) and the hash route. Authoritative state lives on the server;
// everything here is reconstructible from the session journal plus the URL.

import { ApiClient, ApiError, EventDoc, PromptDoc, SessionDoc } from "./api.js";

export const RULES_ID = "default";

export interface BoardState {
  sessionId: string;
  seed: number;
  locks: Record<string, string>; // category letter -> cell token
  lastDraw: PromptDoc | null;
}

/** Append-only view of one session's journal. */
export class Journal {
  constructor(
    private readonly api: ApiClient,
    readonly sessionId: string,
    public last: number,
  ) {}

  /** Append one event; on a sequence conflict, refetch the server's idea of
   * the journal head and retry exactly once. */
  async append(kind: string, payload: Record<string, unknown>): Promise<EventDoc> {
    try {
      const ev = await this.api.appendEvent(this.sessionId, this.last + 1, kind, payload);
      this.last = ev.seq;
      return ev;
    } catch (err) {
      if (!(err instanceof ApiError) || err.code !== "seq-conflict") throw err;
      const doc = await this.api.getSession(this.sessionId);
      this.last = doc.last_seq;
      const ev = await this.api.appendEvent(this.sessionId, this.last + 1, kind, payload);
      this.last = ev.seq;
      return ev;
    }
  }
}

/** Rebuild board locks from the server-side journal fold. */
export function restoreBoardState(doc: SessionDoc): BoardState {
  return {
    sessionId: doc.id,
    seed: doc.seed,
    locks: { ...doc.locks },
    lastDraw: null,
  };
}

export interface Route {
  session?: string;
  prompt?: string;
  scenario?: number;
}

export function readRoute(hash: string): Route {
  const out: Route = {};
  const raw = hash.startsWith("#") ? hash.slice(1) : hash;
  if (!raw) return out;
  const params = new URLSearchParams(raw);
  const session = params.get("session");
  const prompt = params.get("prompt");
  const scenario = params.get("scenario");
  if (session) out.session = session;
  // canonical forms never contain spaces, so undo URLSearchParams' +-as-space
  // decoding for hand-typed hashes like #prompt=A1+B2
  if (prompt) out.prompt = prompt.replace(/ /g, "+");
  if (scenario && /^\d+$/.test(scenario)) out.scenario = Number(scenario);
  return out;
}

export function writeRoute(route: Route): string {
  const params = new URLSearchParams();
  if (route.session) params.set("session", route.session);
  if (route.prompt) params.set("prompt", route.prompt);
  if (route.scenario != null) params.set("scenario", String(route.scenario));
  const raw = params.toString();
  return raw ? `#${raw}` : "";
}
