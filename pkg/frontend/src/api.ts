// Typed fetch client for the session service.  Non-2xx responses are
// thrown as ApiError carrying the server's {error, detail} body so the
// app can render the reason without guessing.

import type {
  ConstraintJson,
  MapJson,
  ServiceError,
  StateJson,
  SuggestionsResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: ServiceError,
  ) {
    super(`${body.error}: ${body.detail}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, init);
  const text = await resp.text();
  const data = text ? JSON.parse(text) : null;
  if (!resp.ok) {
    throw new ApiError(resp.status, data ?? { error: "http-error", detail: String(resp.status) });
  }
  return data as T;
}

function post(body: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  };
}

export class GameClient {
  constructor(public base: string) {}

  async createSession(mode: "plain" | "strong"): Promise<string> {
    const data = await request<{ id: string }>(`${this.base}/session`, post({ mode }));
    return data.id;
  }

  getState(id: string): Promise<StateJson> {
    return request(`${this.base}/session/${id}/state`);
  }

  move(id: string, extra: ConstraintJson[], point: MapJson | null = null): Promise<StateJson> {
    return request(`${this.base}/session/${id}/move`, post({ extra, point }));
  }

  witness(id: string, k: number): Promise<{ prefix: number[] }> {
    return request(`${this.base}/session/${id}/witness?k=${k}`);
  }

  suggestions(id: string): Promise<SuggestionsResponse> {
    return request(`${this.base}/session/${id}/suggestions`);
  }

  async deleteSession(id: string): Promise<void> {
    await request(`${this.base}/session/${id}`, { method: "DELETE" });
  }

  parse(kind: "set" | "box" | "map", text: string): Promise<{ kind: string; value: unknown }> {
    return request(`${this.base}/parse`, post({ kind, text }));
  }
}
