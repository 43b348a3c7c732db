// Coverage gauge and "what should we explore next" panel.
//
// All numbers shown here come from the server's coverage and suggestion
// endpoints; the client only formats them.

import { ApiClient, CoverageDoc, PromptDoc } from "./api.js";
import { Board } from "./board.js";
import { Journal } from "./state.js";

export interface CoverageHooks {
  onAccept?: (prompt: PromptDoc) => void;
}

export class CoveragePanel {
  private readonly api: ApiClient;
  private readonly journal: Journal;
  private readonly board: Board;
  private readonly hooks: CoverageHooks;
  private readonly gauge: HTMLElement;
  private readonly suggestBox: HTMLElement;
  private staged: PromptDoc | null = null;

  constructor(
    root: HTMLElement,
    api: ApiClient,
    journal: Journal,
    board: Board,
    hooks: CoverageHooks = {},
  ) {
    this.api = api;
    this.journal = journal;
    this.board = board;
    this.hooks = hooks;
    root.innerHTML = `
      <div class="coverage-gauge" aria-live="polite"></div>
      <button type="button" class="suggest-btn">Suggest next</button>
      <div class="suggest-box" hidden></div>
    `;
    this.gauge = root.querySelector(".coverage-gauge")!;
    this.suggestBox = root.querySelector(".suggest-box")!;
    root.querySelector(".suggest-btn")!.addEventListener("click", () => {
      void this.suggest();
    });
  }

  /** Re-fetch coverage for the session and repaint the gauge and grid shading. */
  async refresh(): Promise<CoverageDoc> {
    const doc = await this.api.getCoverage(this.journal.sessionId);
    const pct = (doc.pair_coverage * 100).toFixed(1);
    this.gauge.innerHTML = "";
    const pairs = document.createElement("span");
    pairs.className = "pair-count";
    pairs.textContent = `${doc.pairs_covered} / ${doc.pairs_total} pairs`;
    const percent = document.createElement("span");
    percent.className = "pair-percent";
    percent.textContent = `(${pct}%)`;
    this.gauge.append(pairs, " ", percent);
    this.board.shade(doc.cell_usage);
    return doc;
  }

  /** Ask the server for the prompt that would add the most unseen pairs. */
  async suggest(): Promise<void> {
    // Seeding with the journal length keeps tie-breaking reproducible from
    // the journal alone.
    const doc = await this.api.getSuggestion(this.journal.sessionId, this.journal.last);
    this.suggestBox.hidden = false;
    this.suggestBox.innerHTML = "";
    if (doc.complete) {
      const done = document.createElement("p");
      done.className = "suggest-complete";
      done.textContent = "Every reachable pair has been explored.";
      this.suggestBox.appendChild(done);
      this.staged = null;
      return;
    }
    this.staged = doc.prompt;
    const line = document.createElement("p");
    line.className = "suggest-line";
    line.textContent = `${doc.prompt.canonical} (+${doc.new_pairs} new pairs)`;
    const accept = document.createElement("button");
    accept.type = "button";
    accept.className = "accept-btn";
    accept.textContent = "Accept";
    accept.addEventListener("click", () => {
      void this.accept();
    });
    const discard = document.createElement("button");
    discard.type = "button";
    discard.className = "discard-btn";
    discard.textContent = "Discard";
    discard.addEventListener("click", () => {
      this.staged = null;
      this.suggestBox.hidden = true;
    });
    this.suggestBox.append(line, accept, discard);
  }

  /** Hand the staged suggestion to the board, which journals it as a draw. */
  async accept(): Promise<void> {
    if (this.staged === null) return;
    const prompt = this.staged;
    this.staged = null;
    this.suggestBox.hidden = true;
    await this.board.adopt(prompt);
    this.hooks.onAccept?.(prompt);
    await this.refresh();
  }
}
