import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { ApiClient, ApiError, TransportError } from "../src/api.js";
import { FakeServer, matrixDoc, sampleFirst } from "./helpers/fakeServer.js";

describe("ApiClient", () => {
  let fake: FakeServer;
  let api: ApiClient;

  beforeEach(() => {
    fake = new FakeServer();
    fake.install();
    api = new ApiClient();
  });

  afterEach(() => fake.restore());

  it("returns parsed bodies for successful requests", async () => {
    const doc = await api.getMatrix();
    expect(doc).toEqual(matrixDoc);
    expect(doc.categories).toHaveLength(5);
  });

  it("posts sample requests as JSON and returns the response", async () => {
    const doc = await api.sample({ seed: 0, n: 1, locks: [], rules_id: "default" });
    expect(doc).toEqual(sampleFirst);
    expect(fake.sampleRequests).toEqual([
      { seed: 0, n: 1, locks: [], rules_id: "default" },
    ]);
  });

  it("maps error bodies onto ApiError", async () => {
    const err = await api.getSession("nope").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(404);
    expect(err.code).toBe("not-found");
    expect(err.message).toBe("no session 'nope'");
  });

  it("maps infeasible-lock rejections onto ApiError with the engine code", async () => {
    const err = await api
      .sample({ seed: 0, n: 0, locks: ["A5", "C13"], rules_id: "default" })
      .catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(400);
    expect(err.code).toBe("sample-infeasible");
    expect(err.message).toContain("terror-coverup");
  });

  it("wraps network failures in TransportError", async () => {
    fake.offline = true;
    const err = await api.getMatrix().catch((e) => e);
    expect(err).toBeInstanceOf(TransportError);
    expect(err.message).toBe("server unreachable");
  });

  it("falls back to the status line when an error body is not JSON", async () => {
    globalThis.fetch = (async () =>
      new Response("boom", { status: 502, statusText: "Bad Gateway" })) as typeof fetch;
    const err = await api.getMatrix().catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe("http-error");
    expect(err.message).toBe("502 Bad Gateway");
  });
});
