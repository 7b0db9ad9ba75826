import type { InvariantPayload, StatePayload } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(readonly code: string, readonly detail: string) {
    super(`${code}: ${detail}`);
  }
}

/** Thin typed client over the session API; every number shown in the UI
 * comes from these calls, nothing is recomputed client-side. */
export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly session: string = "ui",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async post<T>(path: string, body: Record<string, unknown>): Promise<T> {
    const res = await this.fetchImpl(this.base + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ ...body, session: this.session }),
    });
    return this.unwrap<T>(res);
  }

  private async get<T>(path: string, params: Record<string, string>): Promise<T> {
    const query = new URLSearchParams({ ...params, session: this.session });
    const res = await this.fetchImpl(`${this.base}${path}?${query.toString()}`);
    return this.unwrap<T>(res);
  }

  private async unwrap<T>(res: Response): Promise<T> {
    const body = await res.json();
    if (!res.ok) {
      const detail = body?.detail ?? {};
      throw new ApiRequestError(detail.error ?? `HTTP${res.status}`, detail.detail ?? "");
    }
    return body as T;
  }

  build(fixture: string, framed: boolean): Promise<StatePayload> {
    return this.post<StatePayload>("/api/build", { fixture, framed });
  }

  state(): Promise<StatePayload> {
    return this.get<StatePayload>("/api/state", {});
  }

  mutate(vertex: unknown): Promise<StatePayload> {
    return this.post<StatePayload>("/api/mutate", { vertex });
  }

  undo(): Promise<StatePayload> {
    return this.post<StatePayload>("/api/undo", {});
  }

  reset(): Promise<StatePayload> {
    return this.post<StatePayload>("/api/reset", {});
  }

  invariants(u: string, v: string): Promise<InvariantPayload> {
    return this.get<InvariantPayload>("/api/invariants", { u, v });
  }
}
