"""Teachers: truthful oracles for a fixed hidden target, and a deferred
teacher whose answers are supplied from outside (the human console).

A teacher owns the target and never leaks it; learners interact only through
``answer_mq`` / ``answer_eq`` / ``answer_sq``.  Equivalence counterexamples
are drawn from the axiom sets of the target and the hypothesis, which always
suffices: the union of unsatisfied axioms is non-empty exactly when the two
μ-sets differ, and each such axiom lies in their symmetric difference.
"""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass
from typing import Union

from . import reasoner
from .frameworks import (
    AxiomExample,
    Example,
    LabeledExample,
    LearningFramework,
    axiom_to_data_example,
    enumerate_examples,
    example_to_str,
    is_member,
    size_of_example,
)
from .parser import ParseError, parse_axiom_line
from .syntax import Axiom, Signature, TBox, print_tbox, signature_of


class EmptySupportError(ValueError):
    """A sample-query distribution with no examples to draw from."""


class SessionClosedError(RuntimeError):
    """The interactive session backing a deferred teacher has ended."""


class AnswerValidationError(ValueError):
    """A human-supplied answer that cannot be accepted for the pending query."""


# ---------------------------------------------------------------------------
# Answers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Yes:
    pass


@dataclass(frozen=True)
class No:
    pass


@dataclass(frozen=True)
class Counterexample:
    example: Example


@dataclass(frozen=True)
class Sample:
    labeled: LabeledExample


Answer = Union[Yes, No, Counterexample, Sample]


# ---------------------------------------------------------------------------
# Distributions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Uniform:
    """Uniform draw over the enumerated example space, cap-truncated."""

    depth_cap: int = 3
    size_cap: int = 9


@dataclass(frozen=True)
class Weighted:
    """Draw from an explicit corpus with nonnegative finite weights."""

    corpus: tuple[tuple[Example, float], ...]

    def __post_init__(self) -> None:
        total = 0.0
        for _, w in self.corpus:
            if not math.isfinite(w) or w < 0:
                raise ValueError(f"weights must be finite and nonnegative: {w}")
            total += w
        if total <= 0:
            raise EmptySupportError("weighted corpus has no positive mass")


DistributionSpec = Union[Uniform, Weighted]


# ---------------------------------------------------------------------------
# Truthful teacher
# ---------------------------------------------------------------------------

EQ_STRATEGIES = ("first-smallest", "random-seeded", "adversarial-largest")


@dataclass
class TeacherConfig:
    target: TBox
    framework: LearningFramework
    eq_strategy: str = "first-smallest"
    distribution: DistributionSpec | None = None
    seed: int = 0
    signature: Signature | None = None  # support signature for Uniform draws

    def __post_init__(self) -> None:
        if self.eq_strategy not in EQ_STRATEGIES:
            raise ValueError(f"unknown eq strategy: {self.eq_strategy!r}")
        self.framework.require_hypothesis(self.target)


class Teacher:
    """Answers the three query kinds truthfully for a fixed target."""

    def __init__(self, cfg: TeacherConfig):
        self._cfg = cfg
        self._target = cfg.target
        self._framework = cfg.framework
        self._rng = random.Random(cfg.seed)
        self._support: list[Example] | None = None

    def answer_mq(self, e: Example) -> Answer:
        self._framework.require_example(e)
        return Yes() if is_member(self._framework, self._target, e) else No()

    def answer_eq(self, h: TBox) -> Answer:
        self._framework.require_hypothesis(h)
        candidates: list[Axiom] = [
            a for a in self._target if not reasoner.entails(h, a)
        ]
        candidates += [a for a in h if not reasoner.entails(self._target, a)]
        if not candidates:
            return Yes()
        examples = [self._as_example(a) for a in candidates]
        examples.sort(key=lambda e: (size_of_example(e), example_to_str(e)))
        if self._cfg.eq_strategy == "first-smallest":
            chosen = examples[0]
        elif self._cfg.eq_strategy == "adversarial-largest":
            chosen = examples[-1]
        else:
            chosen = self._rng.choice(examples)
        return Counterexample(chosen)

    def answer_sq(self) -> Answer:
        dist = self._cfg.distribution
        if dist is None:
            raise EmptySupportError("teacher has no sample distribution")
        if isinstance(dist, Weighted):
            examples = [e for e, _ in dist.corpus]
            weights = [w for _, w in dist.corpus]
            e = self._rng.choices(examples, weights=weights, k=1)[0]
        else:
            support = self._uniform_support()
            e = support[self._rng.randrange(len(support))]
        return Sample(LabeledExample(e, is_member(self._framework, self._target, e)))

    def _uniform_support(self) -> list[Example]:
        if self._support is None:
            dist = self._cfg.distribution
            assert isinstance(dist, Uniform)
            sig = self._cfg.signature or signature_of(self._target)
            self._support = list(
                enumerate_examples(self._framework, sig, dist.depth_cap, dist.size_cap)
            )
            if not self._support:
                raise EmptySupportError("uniform distribution has empty support")
        return self._support

    def _as_example(self, a: Axiom) -> Example:
        if self._framework.example_kind == "axiom":
            return AxiomExample(a)
        return axiom_to_data_example(a)


# ---------------------------------------------------------------------------
# Deferred teacher (human in the loop)
# ---------------------------------------------------------------------------


@dataclass
class PendingQuery:
    kind: str  # "mq" or "eq"
    payload: str


class DeferredTeacher:
    """Teacher whose answers arrive asynchronously via :meth:`submit`.

    ``answer_mq``/``answer_eq`` block the learner thread until an answer is
    delivered or the session is closed.  Answers are relayed verbatim; no
    truthfulness check is performed (whoever answers *is* the oracle).
    """

    def __init__(self, framework: LearningFramework, timeout: float | None = None):
        self._framework = framework
        self._timeout = timeout
        self._cv = threading.Condition()
        self._pending: PendingQuery | None = None
        self._answer: Answer | None = None
        self._closed = False

    # -- learner side -------------------------------------------------

    def answer_mq(self, e: Example) -> Answer:
        self._framework.require_example(e)
        return self._ask(PendingQuery("mq", example_to_str(e)))

    def answer_eq(self, h: TBox) -> Answer:
        self._framework.require_hypothesis(h)
        return self._ask(PendingQuery("eq", print_tbox(h)))

    def _ask(self, query: PendingQuery) -> Answer:
        with self._cv:
            if self._closed:
                raise SessionClosedError("session is closed")
            assert self._pending is None, "a query is already in flight"
            self._pending = query
            self._cv.notify_all()
            ok = self._cv.wait_for(
                lambda: self._answer is not None or self._closed,
                timeout=self._timeout,
            )
            if self._answer is None:
                self._pending = None
                if self._closed:
                    raise SessionClosedError("session closed while waiting")
                if not ok:
                    raise TimeoutError("no answer within the session timeout")
            answer = self._answer
            self._answer = None
            self._pending = None
            self._cv.notify_all()
            return answer

    # -- console side ---------------------------------------------------

    def pending(self) -> PendingQuery | None:
        with self._cv:
            return self._pending

    def submit(self, payload: dict) -> None:
        """Validate and deliver a console answer for the pending query.

        ``{"answer": "yes"|"no"}`` answers a membership query ("yes" also
        accepts an equivalence query); ``{"counterexample": text}`` answers
        an equivalence query with a single ``ci:``/``ri:`` line.  Invalid
        input raises :class:`AnswerValidationError` and the query stays
        pending.
        """
        with self._cv:
            if self._pending is None:
                raise AnswerValidationError("no query is pending")
            answer = self._validate(self._pending, payload)
            self._answer = answer
            self._cv.notify_all()

    def _validate(self, query: PendingQuery, payload: dict) -> Answer:
        if not isinstance(payload, dict):
            raise AnswerValidationError("answer must be a JSON object")
        if "counterexample" in payload:
            if query.kind != "eq":
                raise AnswerValidationError(
                    "counterexamples only answer equivalence queries"
                )
            text = payload["counterexample"]
            if not isinstance(text, str):
                raise AnswerValidationError("counterexample must be a string")
            try:
                axioms = parse_axiom_line(text)
            except ParseError as err:
                raise AnswerValidationError(f"unparseable counterexample: {err}") from err
            if len(axioms) != 1:
                raise AnswerValidationError(
                    "counterexample must be a single inclusion, not '=='"
                )
            example = AxiomExample(axioms[0])
            if not self._framework.admits_example(example):
                raise AnswerValidationError(
                    f"counterexample outside fragment {self._framework.fragment_id}"
                )
            return Counterexample(example)
        verdict = payload.get("answer")
        if verdict == "yes":
            return Yes()
        if verdict == "no":
            if query.kind == "eq":
                raise AnswerValidationError(
                    "an equivalence query needs 'yes' or a counterexample"
                )
            return No()
        raise AnswerValidationError(
            "expected {'answer': 'yes'|'no'} or {'counterexample': text}"
        )

    def close(self) -> None:
        with self._cv:
            self._closed = True
            self._cv.notify_all()


def deferred_teacher(
    framework: LearningFramework, timeout: float | None = None
) -> DeferredTeacher:
    """Teacher handle for an interactive session."""
    return DeferredTeacher(framework, timeout)
