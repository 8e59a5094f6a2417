import { describe, expect, it } from "vitest";

import { ApiClient, FetchLike, Suggestion } from "../src/api.js";
import { SequenceBuilder } from "../src/state.js";

interface Recorded {
  url: string;
  body: Record<string, unknown>;
}

function stubServer(fingerings: string[]): { fetchFn: FetchLike; requests: Recorded[] } {
  const requests: Recorded[] = [];
  const suggestions: Suggestion[] = fingerings.map((fingering, i) => ({
    fingering,
    score: 1 / (i + 1),
    playability: 1.0,
    unplayable: false,
    pitch_f1: 1.0,
  }));
  const fetchFn: FetchLike = (url, init) => {
    requests.push({ url, body: JSON.parse(String(init?.body ?? "{}")) });
    const payload = { suggestions };
    return Promise.resolve({
      ok: true,
      status: 200,
      json: () => Promise.resolve(payload),
    } as Response);
  };
  return { fetchFn, requests };
}

describe("SequenceBuilder context contract", () => {
  it("omits prev_fingering on the first step", async () => {
    const { fetchFn, requests } = stubServer(["x.0.2.2.1.0"]);
    const builder = new SequenceBuilder(new ApiClient("", fetchFn));
    await builder.requestSuggestions("Am");
    expect(requests[0].url).toBe("/api/suggest");
    expect(requests[0].body).toEqual({ label: "Am", k: 5 });
  });

  it("sends the committed step-1 fingering as step-2 context", async () => {
    const { fetchFn, requests } = stubServer([
      "x.0.2.2.1.0",
      "5.7.7.5.5.5",
      "x.x.7.5.5.5",
    ]);
    const builder = new SequenceBuilder(new ApiClient("", fetchFn));
    const first = await builder.requestSuggestions("Am");
    // the user picks suggestion #2, not the top-ranked one
    builder.commit("Am", first, first[1].fingering);
    await builder.requestSuggestions("F");
    expect(requests[1].body).toEqual({
      label: "F",
      k: 5,
      prev_fingering: "5.7.7.5.5.5",
    });
  });

  it("uses the latest commit after an undo", async () => {
    const { fetchFn, requests } = stubServer(["x.0.2.2.1.0", "5.7.7.5.5.5"]);
    const builder = new SequenceBuilder(new ApiClient("", fetchFn));
    builder.commit("Am", [], "x.0.2.2.1.0");
    builder.commit("F", [], "1.3.3.2.1.1");
    builder.undo(1);
    await builder.requestSuggestions("G");
    expect(requests[0].body.prev_fingering).toBe("x.0.2.2.1.0");
  });
});

describe("SequenceBuilder editing", () => {
  const api = new ApiClient("", () => Promise.reject(new Error("offline")));

  it("rejects malformed commits", () => {
    const builder = new SequenceBuilder(api);
    expect(() => builder.commit("Am", [], "x.0.2")).toThrow();
    expect(builder.steps).toHaveLength(0);
  });

  it("undo removes the step and everything after it", () => {
    const builder = new SequenceBuilder(api);
    builder.commit("Am", [], "x.0.2.2.1.0");
    builder.commit("F", [], "1.3.3.2.1.1");
    builder.commit("C", [], "x.3.2.0.1.0");
    builder.undo(1);
    expect(builder.steps.map((s) => s.label)).toEqual(["Am"]);
    expect(builder.lastFingering).toBe("x.0.2.2.1.0");
  });

  it("round-trips through export and import", () => {
    const builder = new SequenceBuilder(api);
    builder.commit("Am", [], "x.0.2.2.1.0");
    builder.commit("G/B", [], "x.2.0.0.3.3");
    const text = builder.exportText();
    expect(text).toBe("Am\tx.0.2.2.1.0\nG/B\tx.2.0.0.3.3");

    const other = new SequenceBuilder(api);
    other.importText(text);
    expect(other.steps.map((s) => [s.label, s.chosen])).toEqual([
      ["Am", "x.0.2.2.1.0"],
      ["G/B", "x.2.0.0.3.3"],
    ]);
  });

  it("import rejects bad lines without clobbering state", () => {
    const builder = new SequenceBuilder(api);
    builder.commit("Am", [], "x.0.2.2.1.0");
    expect(() => builder.importText("F no-tab-here")).toThrow(/bad line/);
    expect(builder.steps).toHaveLength(1);
  });
});
