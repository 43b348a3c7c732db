// Session chooser shown before the board loads.

import { ApiClient, SessionMetaDoc } from "./api.js";

export class SessionPicker {
  private readonly api: ApiClient;
  private readonly root: HTMLElement;
  private readonly onPick: (id: string) => void;

  constructor(root: HTMLElement, api: ApiClient, onPick: (id: string) => void) {
    this.root = root;
    this.api = api;
    this.onPick = onPick;
  }

  async show(): Promise<void> {
    const listing = await this.api.listSessions();
    this.root.innerHTML = `
      <h2>Sessions</h2>
      <ul class="session-list"></ul>
      <form class="new-session">
        <label>Seed <input type="number" name="seed" value="0" min="0"></label>
        <button type="submit" class="new-session-btn">New session</button>
      </form>
    `;
    const list = this.root.querySelector(".session-list")!;
    if (listing.sessions.length === 0) {
      const empty = document.createElement("li");
      empty.className = "session-empty";
      empty.textContent = "No sessions yet.";
      list.appendChild(empty);
    }
    for (const meta of listing.sessions) {
      list.appendChild(this.renderRow(meta));
    }
    const form = this.root.querySelector<HTMLFormElement>(".new-session")!;
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      const input = form.elements.namedItem("seed") as HTMLInputElement;
      const seed = Number(input.value);
      void this.create(Number.isFinite(seed) && seed >= 0 ? Math.floor(seed) : 0);
    });
  }

  private renderRow(meta: SessionMetaDoc): HTMLElement {
    const li = document.createElement("li");
    li.className = "session-row";
    li.dataset.id = meta.id;
    const btn = document.createElement("button");
    btn.type = "button";
    btn.textContent = `${meta.id} (seed ${meta.seed}, ${meta.created})`;
    btn.addEventListener("click", () => this.onPick(meta.id));
    li.appendChild(btn);
    return li;
  }

  private async create(seed: number): Promise<void> {
    const doc = await this.api.createSession(seed);
    this.onPick(doc.id);
  }

  hide(): void {
    this.root.innerHTML = "";
  }
}
