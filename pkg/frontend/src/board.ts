// The matrix board: the full grid with lock toggles and rule badges, the
// Draw button, and the last-draw panel. All draws go through POST
// /api/sample with the default ruleset, so a displayed prompt can never
// violate an exclusion rule.

import {
  ApiClient,
  ApiError,
  MatrixDoc,
  PromptDoc,
  RulesetDoc,
  TransportError,
} from "./api.js";
import { BoardState, Journal, RULES_ID } from "./state.js";

export interface BoardHooks {
  onDraw?: (prompt: PromptDoc) => void;
  onJournalChange?: () => void;
}

export class Board {
  private readonly grid: HTMLElement;
  private readonly promptView: HTMLElement;
  private readonly lockMessage: HTMLElement;
  private readonly banner: HTMLElement;
  private readonly ruleCells: Set<string>;

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
    private readonly matrix: MatrixDoc,
    private readonly rules: RulesetDoc | null,
    readonly state: BoardState,
    private readonly journal: Journal,
    private readonly hooks: BoardHooks = {},
  ) {
    this.ruleCells = new Set(
      (rules?.rules ?? []).flatMap((r) => r.conjuncts.flat()),
    );
    root.innerHTML = `
      <div class="board-controls">
        <button class="draw-btn" type="button">Draw</button>
        <span class="lock-message" role="alert"></span>
      </div>
      <div class="banner" hidden></div>
      <div class="grid"></div>
      <div class="prompt-view" aria-live="polite"></div>
    `;
    this.grid = root.querySelector(".grid")!;
    this.promptView = root.querySelector(".prompt-view")!;
    this.lockMessage = root.querySelector(".lock-message")!;
    this.banner = root.querySelector(".banner")!;
    root.querySelector(".draw-btn")!.addEventListener("click", () => void this.draw());
    this.renderGrid();
  }

  private renderGrid(): void {
    for (const category of this.matrix.categories) {
      const column = document.createElement("div");
      column.className = "column";
      const header = document.createElement("h3");
      header.textContent = `${category.letter}: ${category.name}`;
      column.appendChild(header);
      for (const cell of category.cells) {
        const token = `${category.letter}${cell.index}`;
        const el = document.createElement("button");
        el.type = "button";
        el.className = "cell";
        el.dataset.token = token;
        el.title = cell.description;
        el.innerHTML = `<span class="token">${token}</span> ${escapeHtml(cell.label)}`;
        if (this.ruleCells.has(token)) {
          const badge = document.createElement("span");
          badge.className = "rule-badge";
          badge.textContent = "!";
          badge.title = this.badgeTitle(token);
          el.appendChild(badge);
        }
        el.addEventListener("click", () => void this.toggleLock(token));
        column.appendChild(el);
      }
      this.grid.appendChild(column);
    }
    this.paintLocks();
  }

  private badgeTitle(token: string): string {
    const hits = (this.rules?.rules ?? []).filter((r) =>
      r.conjuncts.some((slot) => slot.includes(token)),
    );
    return hits.map((r) => r.rationale || r.id).join("; ");
  }

  lockedTokens(): string[] {
    return Object.values(this.state.locks).sort();
  }

  openLetters(): string[] {
    return this.matrix.categories
      .map((c) => c.letter)
      .filter((letter) => !(letter in this.state.locks));
  }

  async toggleLock(token: string): Promise<void> {
    const letter = token.charAt(0);
    const wasLocked = this.state.locks[letter] === token;
    if (wasLocked) {
      delete this.state.locks[letter];
    } else {
      this.state.locks[letter] = token;
    }
    this.paintLocks();
    try {
      await this.journal.append(wasLocked ? "unlock" : "lock", { cell: token });
      this.hooks.onJournalChange?.();
      await this.probeLocks();
    } catch (err) {
      this.showError(err);
    }
  }

  /** Ask the server whether the current locks admit any prompt at all.
   * A zero-draw sample performs exactly that validation. */
  private async probeLocks(): Promise<void> {
    this.lockMessage.textContent = "";
    if (this.lockedTokens().length === 0) return;
    try {
      await this.api.sample({
        seed: 0,
        n: 0,
        locks: this.lockedTokens(),
        rules_id: RULES_ID,
      });
    } catch (err) {
      if (err instanceof ApiError && err.code === "sample-infeasible") {
        this.lockMessage.textContent = this.rationaleFor(err.message);
        return;
      }
      this.showError(err);
    }
  }

  /** Map a sample-infeasible message back to the offending rule's rationale.
   * The id is quoted in the server message; the rationale comes from the
   * rules document the server already sent us. */
  private rationaleFor(message: string): string {
    const match = /rule '([^']+)'/.exec(message);
    if (match) {
      const rule = this.rules?.rules.find((r) => r.id === match[1]);
      if (rule && rule.rationale) return rule.rationale;
    }
    return message;
  }

  async draw(): Promise<void> {
    this.hideBanner();
    const locks = this.lockedTokens();
    const seed = this.state.seed + this.journal.last;
    try {
      const res = await this.api.sample({ seed, n: 1, locks, rules_id: RULES_ID });
      const prompt = res.prompts[0];
      const isReroll = this.state.lastDraw !== null && locks.length > 0;
      this.renderPrompt(prompt);
      this.state.lastDraw = prompt;
      if (isReroll) {
        await this.journal.append("reroll", {
          prompt: prompt.canonical,
          categories: this.openLetters(),
        });
      } else {
        await this.journal.append("draw", { prompt: prompt.canonical, seed });
      }
      this.hooks.onJournalChange?.();
      this.hooks.onDraw?.(prompt);
    } catch (err) {
      if (err instanceof ApiError && err.code === "sample-infeasible") {
        this.lockMessage.textContent = this.rationaleFor(err.message);
        return;
      }
      this.showError(err);
    }
  }

  /** Adopt a server-produced prompt (e.g. an accepted suggestion) as if it
   * had been drawn. */
  async adopt(prompt: PromptDoc): Promise<void> {
    this.renderPrompt(prompt);
    this.state.lastDraw = prompt;
    try {
      await this.journal.append("draw", { prompt: prompt.canonical });
      this.hooks.onJournalChange?.();
      this.hooks.onDraw?.(prompt);
    } catch (err) {
      this.showError(err);
    }
  }

  private renderPrompt(prompt: PromptDoc): void {
    this.promptView.innerHTML = "";
    const heading = document.createElement("h2");
    heading.className = "prompt-canonical";
    heading.textContent = prompt.canonical;
    this.promptView.appendChild(heading);
    for (const cell of prompt.cells) {
      const row = document.createElement("div");
      row.className = "drawn-cell";
      row.dataset.token = cell.token;
      const label = document.createElement("strong");
      label.textContent = `${cell.token} ${cell.label}`;
      const desc = document.createElement("p");
      desc.textContent = cell.description;
      row.append(label, desc);
      this.promptView.appendChild(row);
    }
  }

  /** Shade grid cells by usage counts from the server coverage report. */
  shade(cellUsage: Record<string, number>): void {
    for (const el of this.grid.querySelectorAll<HTMLElement>(".cell")) {
      const uses = cellUsage[el.dataset.token ?? ""] ?? 0;
      el.classList.toggle("shaded", uses > 0);
      el.dataset.usage = String(uses);
    }
  }

  private paintLocks(): void {
    const locked = new Set(Object.values(this.state.locks));
    for (const el of this.grid.querySelectorAll<HTMLElement>(".cell")) {
      el.classList.toggle("locked", locked.has(el.dataset.token ?? ""));
    }
  }

  private showError(err: unknown): void {
    this.banner.hidden = false;
    this.banner.innerHTML = "";
    const text = document.createElement("span");
    text.textContent =
      err instanceof TransportError
        ? "server unreachable"
        : err instanceof Error
          ? err.message
          : String(err);
    this.banner.appendChild(text);
    if (err instanceof TransportError) {
      const retry = document.createElement("button");
      retry.type = "button";
      retry.className = "retry-btn";
      retry.textContent = "Retry";
      retry.addEventListener("click", () => void this.draw());
      this.banner.appendChild(retry);
    }
  }

  private hideBanner(): void {
    this.banner.hidden = true;
    this.banner.innerHTML = "";
  }
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}
