// Worksheet editor: fetches the question battery for a prompt, renders the
// seven groups in server order, and autosaves typed answers to the session
// journal as draft_save events. Reopening the same prompt restores the
// answers from the server's journal fold.

import { ApiClient, WorksheetDoc } from "./api.js";
import { Journal } from "./state.js";

export interface EditorOptions {
  debounceMs?: number;
  onSaved?: () => void;
}

export class WorksheetEditor {
  private notes: Record<string, string> = {};
  private promptCanonical = "";
  private scenarioId: number | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private readonly debounceMs: number;
  private readonly status: HTMLElement;
  private readonly body: HTMLElement;
  private readonly header: HTMLElement;

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
    private readonly journal: Journal,
    private readonly options: EditorOptions = {},
  ) {
    this.debounceMs = options.debounceMs ?? 600;
    root.innerHTML = `
      <div class="worksheet-header"></div>
      <div class="worksheet-body"></div>
      <div class="save-status" aria-live="polite"></div>
    `;
    this.body = root.querySelector(".worksheet-body")!;
    this.status = root.querySelector(".save-status")!;
    this.header = root.querySelector(".worksheet-header")!;
  }

  /** Fetch the worksheet for a prompt and restore any saved draft. The
   * draft's scenario, if any, is rebuilt into the sheet so a reload looks
   * the same as the original open. */
  async open(canonical: string, scenarioId?: number | null): Promise<void> {
    const session = await this.api.getSession(this.journal.sessionId);
    const draft = session.drafts[canonical];
    const effective = scenarioId ?? draft?.scenario_id ?? null;
    const sheet = await this.api.buildWorksheet(canonical, effective);
    const saved = session.drafts[sheet.prompt.canonical] ?? draft;
    this.promptCanonical = sheet.prompt.canonical;
    this.scenarioId = effective;
    this.notes = saved ? { ...saved.notes } : {};
    this.render(sheet);
  }

  private render(sheet: WorksheetDoc): void {
    this.header.innerHTML = "";
    const title = document.createElement("h2");
    title.textContent = `Worksheet: ${sheet.prompt.canonical}`;
    this.header.appendChild(title);
    if (sheet.scenario) {
      const scenario = document.createElement("p");
      scenario.className = "scenario-heading";
      scenario.textContent = sheet.scenario.tagline
        ? `${sheet.scenario.title}: ${sheet.scenario.tagline}`
        : sheet.scenario.title;
      this.header.appendChild(scenario);
    }

    this.body.innerHTML = "";
    for (const group of sheet.groups) {
      const section = document.createElement("section");
      section.className = "group";
      section.dataset.key = group.key;
      const heading = document.createElement("h3");
      heading.textContent = group.title;
      section.appendChild(heading);
      const list = document.createElement("ol");
      for (const question of group.questions) {
        const item = document.createElement("li");
        const label = document.createElement("label");
        label.textContent = question.text;
        const area = document.createElement("textarea");
        area.dataset.qid = question.id;
        area.value = this.notes[question.id] ?? "";
        area.addEventListener("input", () => {
          this.setNote(question.id, area.value);
        });
        item.append(label, area);
        list.appendChild(item);
      }
      section.appendChild(list);
      this.body.appendChild(section);
    }
  }

  private setNote(questionId: string, value: string): void {
    if (value) {
      this.notes[questionId] = value;
    } else {
      delete this.notes[questionId];
    }
    this.status.textContent = "typing…";
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      // failures already land in the status line
      void this.save().catch(() => undefined);
    }, this.debounceMs);
  }

  async save(): Promise<void> {
    try {
      await this.journal.append("draft_save", {
        prompt: this.promptCanonical,
        scenario_id: this.scenarioId,
        notes: { ...this.notes },
      });
      this.status.textContent = "saved";
      this.options.onSaved?.();
    } catch (err) {
      this.status.textContent =
        err instanceof Error ? `save failed: ${err.message}` : "save failed";
      throw err;
    }
  }

  /** Cancel any pending debounce and save immediately. */
  async flush(): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    await this.save();
  }

  hasPendingSave(): boolean {
    return this.timer !== null;
  }
}
