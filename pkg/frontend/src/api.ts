// Typed client for the service endpoints.  The fetch function and base
// URL are injectable so tests can run against a scripted transport.

import type {
  BracketPayload,
  GameConfig,
  GamePayload,
  HintPayload,
  Move,
  WhatIfPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(public readonly code: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

/** The service surface the UI consumes; tests substitute scripted fakes. */
export interface GameApi {
  createGame(config: GameConfig): Promise<GamePayload>;
  getGame(id: string): Promise<GamePayload>;
  postMove(id: string, move: Move): Promise<GamePayload>;
  hint(id: string): Promise<HintPayload>;
  whatIf(id: string, move: number | "pass"): Promise<WhatIfPayload>;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient implements GameApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, `network failure: ${String(err)}`);
    }
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const message =
        typeof body === "object" && body !== null && "error" in body
          ? String((body as { error: unknown }).error)
          : `request failed with ${response.status}`;
      throw new ApiError(response.status, message);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  createGame(config: GameConfig): Promise<GamePayload> {
    return this.post("/games", config);
  }

  getGame(id: string): Promise<GamePayload> {
    return this.request(`/games/${id}`);
  }

  postMove(id: string, move: Move): Promise<GamePayload> {
    return this.post(`/games/${id}/moves`, move);
  }

  hint(id: string): Promise<HintPayload> {
    return this.request(`/games/${id}/hint`);
  }

  whatIf(id: string, move: number | "pass"): Promise<WhatIfPayload> {
    return this.request(`/games/${id}/whatif?move=${move}`);
  }

  bracket(n: number, k: number): Promise<BracketPayload> {
    return this.request(`/bracket?n=${n}&k=${k}`);
  }
}
