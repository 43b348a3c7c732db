// The coverage gauge and suggestion panel display server-computed numbers
// verbatim: pair counts come from the coverage endpoint, candidate prompts
// from the suggestion endpoint.

import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { ApiClient, MatrixDoc, RulesListDoc, RulesetDoc, SuggestionDoc } from "../src/api.js";
import { Board } from "../src/board.js";
import { CoveragePanel } from "../src/coverage.js";
import { BoardState, Journal } from "../src/state.js";
import {
  FakeServer,
  coverageFirstDraw,
  matrixDoc,
  rulesDoc,
  suggestionSeed1,
} from "./helpers/fakeServer.js";

const defaultRules = (rulesDoc as RulesListDoc).rulesets[0] as RulesetDoc;

describe("CoveragePanel", () => {
  let fake: FakeServer;
  let api: ApiClient;
  let journal: Journal;
  let boardRoot: HTMLElement;
  let panelRoot: HTMLElement;
  let board: Board;
  let panel: CoveragePanel;

  beforeEach(() => {
    fake = new FakeServer();
    fake.install();
    api = new ApiClient();
    const id = fake.freshSession();
    journal = new Journal(api, id, 0);
    const state: BoardState = { sessionId: id, seed: 0, locks: {}, lastDraw: null };
    boardRoot = document.createElement("div");
    panelRoot = document.createElement("div");
    board = new Board(boardRoot, api, matrixDoc as MatrixDoc, defaultRules, state, journal, {});
    panel = new CoveragePanel(panelRoot, api, journal, board, {});
  });

  afterEach(() => fake.restore());

  it("shows zero coverage and no shading for a fresh session", async () => {
    await panel.refresh();
    expect(panelRoot.querySelector(".pair-count")!.textContent).toBe("0 / 4000 pairs");
    expect(panelRoot.querySelector(".pair-percent")!.textContent).toBe("(0.0%)");
    expect(boardRoot.querySelectorAll(".cell.shaded")).toHaveLength(0);
  });

  it("reads 10 / 4000 pairs after the first five-category draw", async () => {
    await board.draw();
    const doc = await panel.refresh();
    expect(doc).toEqual(coverageFirstDraw);
    expect(panelRoot.querySelector(".pair-count")!.textContent).toBe("10 / 4000 pairs");
    expect(panelRoot.querySelector(".pair-percent")!.textContent).toBe("(0.3%)");
  });

  it("shades exactly the cells the server reports as used", async () => {
    await board.draw();
    await panel.refresh();
    const shaded = [...boardRoot.querySelectorAll<HTMLElement>(".cell.shaded")]
      .map((el) => el.dataset.token)
      .sort();
    expect(shaded).toEqual(Object.keys(coverageFirstDraw.cell_usage).sort());
  });

  it("stages the server's suggestion with its new-pair gain", async () => {
    await board.draw();
    await panel.suggest();
    expect(fake.suggestSeeds).toEqual([journal.last]);
    const suggestion = suggestionSeed1 as SuggestionDoc;
    const line = panelRoot.querySelector(".suggest-line")!;
    expect(line.textContent).toBe(`${suggestion.prompt.canonical} (+10 new pairs)`);
  });

  it("accepting a suggestion journals it and shows it on the board", async () => {
    await board.draw();
    await panel.suggest();
    panelRoot.querySelector<HTMLButtonElement>(".accept-btn")!.click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    const suggestion = suggestionSeed1 as SuggestionDoc;
    expect(boardRoot.querySelector(".prompt-canonical")!.textContent).toBe(
      suggestion.prompt.canonical,
    );
    const last = fake.eventAppends.at(-1)!;
    expect(last.kind).toBe("draw");
    expect(last.payload.prompt).toBe(suggestion.prompt.canonical);
    expect(panelRoot.querySelector<HTMLElement>(".suggest-box")!.hidden).toBe(true);
  });

  it("discarding a suggestion journals nothing", async () => {
    await panel.suggest();
    const before = fake.eventAppends.length;
    panelRoot.querySelector<HTMLButtonElement>(".discard-btn")!.click();
    expect(fake.eventAppends).toHaveLength(before);
    expect(panelRoot.querySelector<HTMLElement>(".suggest-box")!.hidden).toBe(true);
  });
});
