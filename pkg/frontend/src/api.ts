// Thin client for the session service; the service is authoritative,
// this module never interprets game rules.

import type {
  EdgePair,
  IndefensibleError,
  RoundRecord,
  SessionSummary,
  SessionView,
} from "./types.js";

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly body: Record<string, unknown>,
  ) {
    super(String(body["message"] ?? body["error"] ?? status));
  }

  get isIndefensible(): boolean {
    return this.body["error"] === "Indefensible";
  }

  get indefensible(): IndefensibleError | null {
    return this.isIndefensible ? (this.body as unknown as IndefensibleError) : null;
  }

  get isConflict(): boolean {
    return this.status === 409;
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const body = (await response.json()) as Record<string, unknown>;
  if (!response.ok) {
    throw new ServiceError(response.status, body);
  }
  return body as T;
}

export interface CreateSessionParams {
  kind: string;
  h: number;
  w: number;
  topology: string;
  strategy: string;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  createSession(params: CreateSessionParams): Promise<SessionSummary> {
    return request(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(params),
    });
  }

  getState(sessionId: string): Promise<SessionView> {
    return request(`${this.baseUrl}/sessions/${sessionId}`);
  }

  async listAttacks(sessionId: string): Promise<EdgePair[]> {
    const body = await request<{ attacks: EdgePair[] }>(
      `${this.baseUrl}/sessions/${sessionId}/attacks`,
    );
    return body.attacks;
  }

  postAttack(
    sessionId: string,
    edge: EdgePair,
    version?: number,
  ): Promise<RoundRecord> {
    return request(`${this.baseUrl}/sessions/${sessionId}/attack`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(version === undefined ? { edge } : { edge, version }),
    });
  }

  /** Browser-only: push round records into the callback as they happen. */
  subscribe(
    sessionId: string,
    onRound: (record: RoundRecord) => void,
  ): () => void {
    const source = new EventSource(`${this.baseUrl}/sessions/${sessionId}/events`);
    source.addEventListener("round", (event) => {
      onRound(JSON.parse((event as MessageEvent).data) as RoundRecord);
    });
    return () => source.close();
  }
}
