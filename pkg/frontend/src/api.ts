// Thin client for the partiti service. In-flight validation calls are
// superseded: a newer request aborts the older one so stale verdicts never
// overwrite fresh local state.

import type {
  CheckResponse,
  DifficultyName,
  Hint,
  PlayerStateBody,
  PuzzleDocument,
  Violation,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;

  constructor(code: string, message: string) {
    super(message);
    this.code = code;
  }
}

async function readJson<T>(resp: Response): Promise<T> {
  const body = await resp.json();
  if (!resp.ok) {
    const code = typeof body?.code === "string" ? body.code : "unknown";
    const message =
      typeof body?.message === "string" ? body.message : resp.statusText;
    throw new ApiError(code, message);
  }
  return body as T;
}

export class PartitiClient {
  private readonly base: string;
  private validateController: AbortController | null = null;

  constructor(base = "") {
    this.base = base;
  }

  async getPuzzle(
    difficulty: DifficultyName,
    seed?: number,
    rows = 6,
    cols = 6,
  ): Promise<PuzzleDocument> {
    const params = new URLSearchParams({
      difficulty,
      rows: String(rows),
      cols: String(cols),
    });
    if (seed !== undefined) params.set("seed", String(seed));
    const resp = await fetch(`${this.base}/api/puzzle?${params}`);
    return readJson<PuzzleDocument>(resp);
  }

  private post<T>(path: string, state: PlayerStateBody, signal?: AbortSignal) {
    return fetch(`${this.base}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(state),
      signal,
    }).then((resp) => readJson<T>(resp));
  }

  /** Authoritative validation; a newer call aborts the previous one. */
  async validate(state: PlayerStateBody): Promise<Violation[] | null> {
    this.validateController?.abort();
    const controller = new AbortController();
    this.validateController = controller;
    try {
      return await this.post<Violation[]>(
        "/api/validate",
        state,
        controller.signal,
      );
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") {
        return null; // superseded
      }
      throw err;
    }
  }

  hint(state: PlayerStateBody): Promise<Hint | null> {
    return this.post<Hint | null>("/api/hint", state);
  }

  check(state: PlayerStateBody): Promise<CheckResponse> {
    return this.post<CheckResponse>("/api/check", state);
  }
}
