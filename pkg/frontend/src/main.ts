// Application entry point: pick a session, then wire the board, coverage
// panel, and worksheet editor to it. The engine's HTTP API is the only
// source of matrix data, prompts, and coverage numbers.

import { ApiClient, PromptDoc } from "./api.js";
import { Board } from "./board.js";
import { CoveragePanel } from "./coverage.js";
import { SessionPicker } from "./session.js";
import { Journal, readRoute, restoreBoardState, writeRoute } from "./state.js";
import { WorksheetEditor } from "./worksheet.js";

declare global {
  interface Window {
    ICARUS_API?: string;
  }
}

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id} in index.html`);
  return node;
}

async function openBoard(api: ApiClient, sessionId: string): Promise<void> {
  const [matrixDoc, rulesDoc, sessionDoc] = await Promise.all([
    api.getMatrix(),
    api.getRules(),
    api.getSession(sessionId),
  ]);
  const rules =
    rulesDoc.rulesets.find((r) => r.id === "default") ?? rulesDoc.rulesets[0] ?? null;
  const journal = new Journal(api, sessionId, sessionDoc.last_seq);
  const state = restoreBoardState(sessionDoc);

  const worksheet = new WorksheetEditor(el("worksheet"), api, journal);
  let coverage: CoveragePanel;

  const onPrompt = (prompt: PromptDoc) => {
    const route = readRoute(location.hash);
    route.session = sessionId;
    route.prompt = prompt.canonical;
    location.hash = writeRoute(route);
    void worksheet.open(prompt.canonical);
    void coverage.refresh();
  };

  const board = new Board(el("board"), api, matrixDoc, rules, state, journal, {
    onDraw: onPrompt,
  });
  coverage = new CoveragePanel(el("coverage"), api, journal, board, {
    onAccept: onPrompt,
  });

  await coverage.refresh();

  const route = readRoute(location.hash);
  if (route.prompt) {
    // a reload mid-session: reopen the worksheet, answers included
    await worksheet.open(route.prompt, route.scenario ?? null);
  }

  window.addEventListener("beforeunload", () => {
    if (worksheet.hasPendingSave()) void worksheet.flush();
  });
}

async function boot(): Promise<void> {
  const api = new ApiClient(window.ICARUS_API ?? "http://127.0.0.1:8000");
  const pickerRoot = el("session-picker");
  const route = readRoute(location.hash);
  if (route.session) {
    pickerRoot.hidden = true;
    await openBoard(api, route.session);
    return;
  }
  const picker = new SessionPicker(pickerRoot, api, (id) => {
    location.hash = writeRoute({ session: id });
    picker.hide();
    pickerRoot.hidden = true;
    void openBoard(api, id);
  });
  await picker.show();
}

boot().catch((err) => {
  const banner = document.createElement("div");
  banner.className = "boot-error";
  banner.textContent = err instanceof Error ? err.message : String(err);
  document.body.prepend(banner);
});
