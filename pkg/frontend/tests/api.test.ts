import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";

function fakeFetch(
  handler: (input: string, init?: RequestInit) => { status: number; body: unknown },
) {
  const calls: Array<{ input: string; init?: RequestInit }> = [];
  const fetchFn = async (input: string, init?: RequestInit): Promise<Response> => {
    calls.push({ input, init });
    const { status, body } = handler(input, init);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

describe("ApiClient", () => {
  it("posts configs and parses game payloads", async () => {
    const { fetchFn, calls } = fakeFetch(() => ({
      status: 200,
      body: { id: "abc", state: { turn: 0 }, cells: [[1]], board: "." },
    }));
    const client = new ApiClient("http://service", fetchFn);
    const game = await client.createGame({ m: 3, p: 2, q: 2, k: 1, variant: "standard" });
    expect(game.id).toBe("abc");
    expect(calls[0].input).toBe("http://service/games");
    expect(calls[0].init?.method).toBe("POST");
    expect(JSON.parse(String(calls[0].init?.body))).toMatchObject({ m: 3, variant: "standard" });
  });

  it("carries the turn token on move submissions", async () => {
    const { fetchFn, calls } = fakeFetch(() => ({ status: 200, body: {} }));
    const client = new ApiClient("", fetchFn);
    await client.postMove("abc", { type: "mark", cell: 4, expectedTurn: 2 });
    expect(calls[0].input).toBe("/games/abc/moves");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      type: "mark",
      cell: 4,
      expectedTurn: 2,
    });
  });

  it("maps service errors onto ApiError with the server message", async () => {
    const { fetchFn } = fakeFetch(() => ({
      status: 409,
      body: { error: "cell 3 already marked", code: 409 },
    }));
    const client = new ApiClient("", fetchFn);
    const err = await client.postMove("abc", { type: "mark", cell: 3 }).catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe(409);
    expect(err.message).toBe("cell 3 already marked");
  });

  it("maps transport failures onto code 0", async () => {
    const client = new ApiClient("", async () => {
      throw new Error("connection refused");
    });
    const err = await client.getGame("abc").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.code).toBe(0);
    expect(err.message).toContain("connection refused");
  });

  it("builds what-if query urls", async () => {
    const { fetchFn, calls } = fakeFetch(() => ({
      status: 200,
      body: { move: "4", resultingOutcome: "DrawValue", nodesExplored: 1 },
    }));
    const client = new ApiClient("", fetchFn);
    await client.whatIf("abc", 4);
    await client.whatIf("abc", "pass");
    expect(calls.map((c) => c.input)).toEqual([
      "/games/abc/whatif?move=4",
      "/games/abc/whatif?move=pass",
    ]);
  });
});
