/** DOM wiring: renders a ConsoleSessionView and forwards button clicks. */

import { ConsoleSession, ConsoleSessionView } from "./session.js";
import { highlightBlock, highlightLine } from "./highlight.js";

export interface ConsoleElements {
  status: HTMLElement;
  query: HTMLElement;
  yesButton: HTMLButtonElement;
  noButton: HTMLButtonElement;
  counterexampleInput: HTMLInputElement;
  sendButton: HTMLButtonElement;
  inputError: HTMLElement;
  history: HTMLElement;
  finalHypothesis: HTMLElement;
}

export function bindConsole(session: ConsoleSession, el: ConsoleElements): void {
  el.yesButton.addEventListener("click", () => void session.submitYes());
  el.noButton.addEventListener("click", () => void session.submitNo());
  el.sendButton.addEventListener("click", () =>
    void session.submitCounterexample(el.counterexampleInput.value),
  );
  el.counterexampleInput.addEventListener("keydown", (event) => {
    if (event.key === "Enter") void session.submitCounterexample(el.counterexampleInput.value);
  });
  session.onChange((view) => render(view, el));
  render(session.view, el);
}

function render(view: ConsoleSessionView, el: ConsoleElements): void {
  const pending = view.pendingQuery;
  if (view.phase === "error") {
    el.status.textContent = `network error: ${view.networkError} (retrying)`;
  } else if (view.phase === "halted") {
    el.status.textContent = "learner halted";
  } else if (view.phase === "thinking") {
    el.status.textContent = "learner is thinking…";
  } else if (pending?.kind === "mq") {
    el.status.textContent = `membership query (step ${pending.step}): does this hold in the domain?`;
  } else if (pending) {
    el.status.textContent = `equivalence query (step ${pending.step}): is this hypothesis complete and correct?`;
  }

  el.query.innerHTML = pending ? highlightBlock(pending.payload) : "";

  const isMq = pending?.kind === "mq";
  const isEq = pending?.kind === "eq";
  el.yesButton.disabled = !pending;
  el.noButton.disabled = !isMq; // an equivalence query needs a counterexample
  el.counterexampleInput.disabled = !isEq;
  el.sendButton.disabled = !isEq;

  el.inputError.textContent = view.inputError ?? "";

  el.history.innerHTML = view.history
    .map(
      (record) =>
        `<li><span class="step">#${record.step}</span> ` +
        `<code>${highlightLine(record.query.split("\n")[0] ?? "")}` +
        `${record.query.includes("\n") ? " …" : ""}</code>` +
        ` → <b>${highlightLine(record.answer)}</b></li>`,
    )
    .join("");

  if (view.phase === "halted") {
    el.finalHypothesis.innerHTML = view.finalHypothesis
      ? highlightBlock(view.finalHypothesis)
      : "<i>(empty hypothesis)</i>";
  }
}
