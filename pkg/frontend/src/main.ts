/** Page entry: session creation form, then the console proper. */

import { SessionApi } from "./api.js";
import { bindConsole, ConsoleElements } from "./console.js";
import { ConsoleSession } from "./session.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

function parseNames(raw: string): string[] {
  return raw
    .split(/[\s,]+/)
    .map((s) => s.trim())
    .filter(Boolean);
}

async function startSession(): Promise<void> {
  const server = byId<HTMLInputElement>("server").value.replace(/\/$/, "");
  const api = new SessionApi(server);
  const sessionId = await api.createSession({
    framework: byId<HTMLSelectElement>("framework").value,
    learner: byId<HTMLSelectElement>("learner").value,
    signature: {
      concepts: parseNames(byId<HTMLInputElement>("concepts").value),
      roles: parseNames(byId<HTMLInputElement>("roles").value),
    },
  });
  byId("setup").hidden = true;
  byId("console").hidden = false;
  byId("session-id").textContent = sessionId;

  const elements: ConsoleElements = {
    status: byId("status"),
    query: byId("query"),
    yesButton: byId<HTMLButtonElement>("yes"),
    noButton: byId<HTMLButtonElement>("no"),
    counterexampleInput: byId<HTMLInputElement>("counterexample"),
    sendButton: byId<HTMLButtonElement>("send"),
    inputError: byId("input-error"),
    history: byId("history"),
    finalHypothesis: byId("final"),
  };
  const session = new ConsoleSession(api, sessionId, 500);
  bindConsole(session, elements);
  session.start();
}

byId<HTMLButtonElement>("start").addEventListener("click", () => {
  void startSession().catch((err) => {
    byId("setup-error").textContent =
      err instanceof Error ? err.message : String(err);
  });
});
