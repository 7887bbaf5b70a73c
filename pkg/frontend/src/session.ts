/** The console's session state machine, DOM-free and fully testable.
 *
 * Every field of the view is a restatement of an API response; the console
 * holds no truth of its own.  Polling is turn-based: one GET per interval,
 * faster settling right after an answer is accepted.
 */

import { ApiError, PendingView, SessionApi } from "./api.js";
import { validateCounterexample } from "./grammar.js";

export interface AnswerRecord {
  step: number;
  kind: "mq" | "eq";
  query: string;
  answer: string; // "yes" | "no" | the counterexample line
}

export interface ConsoleSessionView {
  sessionId: string;
  phase: "thinking" | "pending" | "halted" | "error";
  pendingQuery: PendingView | null;
  /** hypothesis text exposed by the latest equivalence-query payload */
  hypothesisSnapshot: string | null;
  finalHypothesis: string | null;
  history: AnswerRecord[];
  inputError: string | null;
  networkError: string | null;
}

export class ConsoleSession {
  readonly view: ConsoleSessionView;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private listeners: Array<(view: ConsoleSessionView) => void> = [];

  constructor(
    private readonly api: SessionApi,
    sessionId: string,
    private readonly pollIntervalMs: number = 500,
  ) {
    this.view = {
      sessionId,
      phase: "thinking",
      pendingQuery: null,
      hypothesisSnapshot: null,
      finalHypothesis: null,
      history: [],
      inputError: null,
      networkError: null,
    };
  }

  onChange(listener: (view: ConsoleSessionView) => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this.view);
  }

  start(): void {
    void this.pollOnce();
    this.timer = setInterval(() => void this.pollOnce(), this.pollIntervalMs);
  }

  stop(): void {
    if (this.timer !== null) clearInterval(this.timer);
    this.timer = null;
  }

  /** One poll: refresh the view from GET pending. */
  async pollOnce(): Promise<void> {
    if (this.view.phase === "halted") return;
    let pending: PendingView | null;
    try {
      pending = await this.api.pending(this.view.sessionId);
    } catch (err) {
      this.view.networkError =
        err instanceof Error ? err.message : "network error";
      this.view.phase = "error";
      this.notify();
      return;
    }
    this.view.networkError = null;
    if (pending === null) {
      this.view.phase = "thinking";
      this.view.pendingQuery = null;
    } else if (pending.kind === "halted") {
      this.view.phase = "halted";
      this.view.pendingQuery = null;
      this.view.finalHypothesis = pending.payload;
      this.stop();
    } else {
      this.view.phase = "pending";
      this.view.pendingQuery = pending;
      if (pending.kind === "eq") {
        this.view.hypothesisSnapshot = pending.payload;
      }
    }
    this.notify();
  }

  get canAnswer(): boolean {
    return this.view.phase === "pending";
  }

  async submitYes(): Promise<void> {
    await this.submit({ answer: "yes" });
  }

  async submitNo(): Promise<void> {
    await this.submit({ answer: "no" });
  }

  /** Validate locally first; nothing is sent on a parse error. */
  async submitCounterexample(text: string): Promise<void> {
    const verdict = validateCounterexample(text.trim());
    if (!verdict.ok) {
      this.view.inputError = `column ${verdict.column}: ${verdict.message}`;
      this.notify();
      return;
    }
    await this.submit({ counterexample: text.trim() });
  }

  private async submit(
    body: { answer: "yes" | "no" } | { counterexample: string },
  ): Promise<void> {
    const pending = this.view.pendingQuery;
    if (!this.canAnswer || pending === null) {
      this.view.inputError = "no query is pending";
      this.notify();
      return;
    }
    try {
      await this.api.answer(this.view.sessionId, body);
    } catch (err) {
      this.view.inputError =
        err instanceof ApiError ? err.message : "failed to send the answer";
      this.notify();
      return;
    }
    this.view.inputError = null;
    this.view.history.push({
      step: pending.step,
      kind: pending.kind as "mq" | "eq",
      query: pending.payload,
      answer: "answer" in body ? body.answer : body.counterexample,
    });
    this.view.phase = "thinking";
    this.view.pendingQuery = null;
    this.notify();
    await this.pollOnce(); // settle quickly instead of waiting an interval
  }
}
