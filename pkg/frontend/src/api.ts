/** Typed client for the session HTTP API; the console's only data source. */

export interface SignatureSpec {
  concepts: string[];
  roles: string[];
}

export interface CreateSessionRequest {
  framework: string;
  learner: string;
  signature: SignatureSpec;
  caps?: { maxQueries?: number; maxSize?: number; depthCap?: number };
}

export interface PendingView {
  kind: "mq" | "eq" | "halted";
  payload: string;
  step: number;
}

export interface TranscriptEvent {
  step: number;
  type: string;
  payload: Record<string, unknown>;
}

export interface Transcript {
  config: Record<string, unknown>;
  events: TranscriptEvent[];
  metrics: Record<string, unknown> | null;
  halted?: boolean;
  outcome?: string | null;
  hypothesis?: string | null;
}

export type AnswerBody = { answer: "yes" | "no" } | { counterexample: string };

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

async function readError(response: Response): Promise<ApiError> {
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { error?: string };
    if (body.error) message = body.error;
  } catch {
    /* non-JSON error body; keep the status text */
  }
  return new ApiError(response.status, message);
}

export class SessionApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<Response> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers: body !== undefined ? { "Content-Type": "application/json" } : undefined,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    if (!response.ok && response.status !== 204) {
      throw await readError(response);
    }
    return response;
  }

  async createSession(request: CreateSessionRequest): Promise<string> {
    const response = await this.request("POST", "/sessions", request);
    const body = (await response.json()) as { sessionId: string };
    return body.sessionId;
  }

  /** Pending query, halted notice, or null while the learner is thinking. */
  async pending(sessionId: string): Promise<PendingView | null> {
    const response = await this.request("GET", `/sessions/${sessionId}/pending`);
    if (response.status === 204) return null;
    return (await response.json()) as PendingView;
  }

  async answer(sessionId: string, body: AnswerBody): Promise<void> {
    await this.request("POST", `/sessions/${sessionId}/answer`, body);
  }

  async transcript(sessionId: string): Promise<Transcript> {
    const response = await this.request("GET", `/sessions/${sessionId}/transcript`);
    return (await response.json()) as Transcript;
  }

  async remove(sessionId: string): Promise<void> {
    await this.request("DELETE", `/sessions/${sessionId}`);
  }
}
