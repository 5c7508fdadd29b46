import type {
  HistoryDoc,
  OutcomeResult,
  PkgDoc,
  ProposalDoc,
  RoundCloseDoc,
  SessionDoc,
  WhatifDoc,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(code: string, message: string, status: number) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client over the documented advisor endpoints. */
export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base = "", fetchImpl: FetchLike = (url, init) => fetch(url, init)) {
    this.base = base.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, {
        method,
        headers: body === undefined ? {} : { "Content-Type": "application/json" },
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch {
      throw new ApiError("ConnectionError", "advisor service unreachable", 0);
    }
    const text = await response.text();
    const data = text ? JSON.parse(text) : {};
    if (!response.ok) {
      // service errors carry {error: {code, message}}; 409 round-close
      // warnings come back as ordinary payloads with status "warning"
      if (data && typeof data === "object" && "status" in data && data.status === "warning") {
        return data as T;
      }
      const code = data?.error?.code ?? "HttpError";
      const message = data?.error?.message ?? `request failed with ${response.status}`;
      throw new ApiError(code, message, response.status);
    }
    return data as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/healthz");
  }

  createDemoSession(
    truth: { n: number; edges: [number, number][] },
    config: { k_max?: number; seed?: number } = {},
  ): Promise<SessionDoc> {
    return this.request("POST", "/sessions", { mode: "demo", truth, config });
  }

  createInteractiveSession(
    pkg: PkgDoc,
    config: { k_max?: number; seed?: number } = {},
  ): Promise<SessionDoc> {
    return this.request("POST", "/sessions", { mode: "interactive", pkg, config });
  }

  getSession(id: string): Promise<SessionDoc> {
    return this.request("GET", `/sessions/${id}`);
  }

  getProposal(id: string): Promise<ProposalDoc> {
    return this.request("GET", `/sessions/${id}/proposal`);
  }

  submitOutcomes(
    id: string,
    outcomes: { id: string; result: OutcomeResult }[],
  ): Promise<RoundCloseDoc> {
    return this.request("POST", `/sessions/${id}/outcomes`, { outcomes });
  }

  whatif(id: string, vertices: number[]): Promise<WhatifDoc> {
    return this.request("POST", `/sessions/${id}/whatif`, { vertices });
  }

  getHistory(id: string): Promise<HistoryDoc> {
    return this.request("GET", `/sessions/${id}/history`);
  }
}
