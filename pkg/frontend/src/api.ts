// Thin typed client over the session HTTP API.  Every action awaits the
// server round-trip; restoration steps are order-sensitive, so nothing is
// applied optimistically.

import type {
  GanttPayload,
  HistoryEvent,
  InstanceDoc,
  SessionRequest,
  SessionState,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
    // 408 responses carry the partial state so the UI can still render it
    readonly partialState: SessionState | null = null,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (response.status === 408) {
      throw new ApiError(408, "budget exceeded", payload as SessionState);
    }
    if (!response.ok) {
      const detail =
        typeof payload?.detail === "string"
          ? payload.detail
          : JSON.stringify(payload);
      throw new ApiError(response.status, detail);
    }
    return payload as T;
  }

  uploadInstance(doc: InstanceDoc) {
    return this.request<{ instance_id: string }>("POST", "/instances", doc);
  }

  createSession(req: SessionRequest) {
    return this.request<SessionState>("POST", "/sessions", req);
  }

  getSession(id: string) {
    return this.request<SessionState>("GET", `/sessions/${id}`);
  }

  solve(id: string) {
    return this.request<SessionState>("POST", `/sessions/${id}/solve`);
  }

  applyOverride(id: string, activity: string, team: string, mode: "force" | "forbid") {
    return this.request<SessionState>("POST", `/sessions/${id}/overrides`, {
      activity,
      team,
      mode,
    });
  }

  beginLocalResolution(id: string) {
    return this.request<SessionState>(
      "POST",
      `/sessions/${id}/resolution/local/begin`,
    );
  }

  resolveLocal(id: string, label: string) {
    return this.request<SessionState>(
      "POST",
      `/sessions/${id}/resolution/local/resolve`,
      { label },
    );
  }

  beginGlobalResolution(id: string) {
    return this.request<SessionState>(
      "POST",
      `/sessions/${id}/resolution/global/begin`,
    );
  }

  // the accepted subset is sent exactly as the user checked it
  acceptCorrections(id: string, labels: string[]) {
    return this.request<SessionState>(
      "POST",
      `/sessions/${id}/resolution/global/accept`,
      { labels },
    );
  }

  tunePriorities(id: string, weights: Record<string, number>) {
    return this.request<SessionState>("POST", `/sessions/${id}/priorities`, {
      weights,
    });
  }

  getGantt(id: string) {
    return this.request<GanttPayload>("GET", `/sessions/${id}/gantt`);
  }

  getHistory(id: string) {
    return this.request<{ history: HistoryEvent[] }>(
      "GET",
      `/sessions/${id}/history`,
    );
  }
}
