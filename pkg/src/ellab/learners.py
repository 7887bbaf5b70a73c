"""Learning algorithms, one per fragment, plus the PAC conversion wrapper.

Every learner sees only a teacher handle and the target's signature; the
target itself stays on the teacher's side of the protocol.  All tie-breaking
is lexicographic on canonical text so runs are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Protocol

from . import reasoner
from .frameworks import (
    AxiomExample,
    Example,
    LearningFramework,
    enumerate_examples,
    framework,
    is_member,
)
from .oracles import Answer, Counterexample, Sample, Yes
from .syntax import (
    Axiom,
    CI,
    EMPTY_TBOX,
    Name,
    RI,
    Signature,
    TBox,
    axiom_to_str,
    concept_to_str,
    conjunction,
    conjuncts_of,
    size_of,
)


class CapExhaustedError(RuntimeError):
    """A query or size budget ran out before the learner halted."""


class EnumerationExhaustedError(RuntimeError):
    """No hypothesis up to the size bound was equivalent to the target."""


class TeacherHandle(Protocol):
    def answer_mq(self, e: Example) -> Answer: ...

    def answer_eq(self, h: TBox) -> Answer: ...


@dataclass(frozen=True)
class LearnerCaps:
    max_queries: int = 1_000_000
    max_size: int = 8
    depth_cap: int = 3

    def __post_init__(self) -> None:
        if self.max_queries <= 0 or self.max_size <= 0 or self.depth_cap <= 0:
            raise ValueError("caps must be positive")


def _yes(answer: Answer) -> bool:
    return isinstance(answer, Yes)


def _counterexample_axiom(answer: Answer) -> Axiom:
    assert isinstance(answer, Counterexample)
    example = answer.example
    assert isinstance(example, AxiomExample), "axiom-framework teacher expected"
    return example.axiom


# ---------------------------------------------------------------------------
# Membership-only learners over finite axiom spaces
# ---------------------------------------------------------------------------


def learn_toy_atomic(teacher: TeacherHandle, sig: Signature) -> TBox:
    """Ask one membership query per name pair; keep the confirmed inclusions.

    Issues exactly ``|concept names|**2`` queries.  Tautologies (inclusions
    entailed by the empty TBox) are pruned from the output.
    """
    names = sorted(sig.concept_names)
    kept = []
    for a in names:
        for b in names:
            axiom = CI(Name(a), Name(b))
            if _yes(teacher.answer_mq(AxiomExample(axiom))):
                if not reasoner.entails(EMPTY_TBOX, axiom):
                    kept.append(axiom)
    return TBox(kept)


def learn_dllite_mq(teacher: TeacherHandle, sig: Signature) -> TBox:
    """One membership query per DL-Lite axiom over the signature."""
    kept = []
    for example in enumerate_examples(framework("dllite"), sig):
        assert isinstance(example, AxiomExample)
        if _yes(teacher.answer_mq(example)):
            kept.append(example.axiom)
    return TBox(kept)


def learn_conj_exhaustive(teacher: TeacherHandle, sig: Signature) -> TBox:
    """Brute-force membership sweep over every conjunction-fragment inclusion.

    Terminates (the space is finite) but needs exponentially many queries in
    the signature size; used as a scripted baseline in the lower-bound
    experiment.
    """
    kept = []
    for example in enumerate_examples(framework("toy-conj"), sig):
        assert isinstance(example, AxiomExample)
        if _yes(teacher.answer_mq(example)):
            if not reasoner.entails(EMPTY_TBOX, example.axiom):
                kept.append(example.axiom)
    return TBox(kept)


# ---------------------------------------------------------------------------
# Horn learner (membership + equivalence)
# ---------------------------------------------------------------------------


def learn_horn(teacher: TeacherHandle, sig: Signature) -> TBox:
    """Identify a conjunction-fragment target with MQs and EQs.

    State is an ordered list of (antecedent, consequents) pairs whose induced
    hypothesis only contains membership-confirmed inclusions, so every
    equivalence counterexample is positive.  A received counterexample's
    antecedent is first closed under the current hypothesis (a learner-side
    computation, no queries); without that closure an append/refine cycle
    can recreate the same entry forever.  The closed antecedent then either
    strictly shrinks the first refinable entry or is appended as a new one.
    """
    names = sorted(sig.concept_names)
    mq_cache: dict[CI, bool] = {}

    def mq(antecedent: frozenset[str], consequent: str) -> bool:
        if consequent in antecedent:  # tautology, no need to ask
            return True
        axiom = CI(conjunction([Name(n) for n in sorted(antecedent)]), Name(consequent))
        if axiom not in mq_cache:
            mq_cache[axiom] = _yes(teacher.answer_mq(AxiomExample(axiom)))
        return mq_cache[axiom]

    def consequents(antecedent: frozenset[str]) -> set[str]:
        return {b for b in names if b not in antecedent and mq(antecedent, b)}

    state: list[tuple[frozenset[str], set[str]]] = []

    def close_under_state(conjuncts: frozenset[str]) -> frozenset[str]:
        closed = set(conjuncts)
        changed = True
        while changed:
            changed = False
            for ante, cons in state:
                if ante <= closed and not cons <= closed:
                    closed |= cons
                    changed = True
        return frozenset(closed)

    def hypothesis() -> TBox:
        return TBox(
            CI(conjunction([Name(n) for n in sorted(ante)]), Name(b))
            for ante, cons in state
            for b in cons
        )

    while True:
        h = hypothesis()
        answer = teacher.answer_eq(h)
        if _yes(answer):
            return h
        received = _counterexample_axiom(answer)
        ce_names = close_under_state(
            frozenset(
                part.name
                for part in conjuncts_of(received.lhs)
                if isinstance(part, Name)
            )
        )
        refined = False
        for i, (ante, _) in enumerate(state):
            shrunk = ante & ce_names
            if not shrunk or shrunk == ante:
                continue
            if any(b not in shrunk and mq(shrunk, b) for b in names):
                state[i] = (shrunk, consequents(shrunk))
                refined = True
                break
        if not refined:
            state.append((ce_names, consequents(ce_names)))


# ---------------------------------------------------------------------------
# Equivalence-only learners
# ---------------------------------------------------------------------------


def learn_dllite_eq(teacher: TeacherHandle, sig: Signature) -> TBox:
    """Grow the hypothesis by one returned counterexample per round.

    Because the hypothesis only ever contains returned positive examples,
    the teacher must keep returning positive counterexamples, and each one
    is new; the round count is bounded by the axiom-space size plus one.
    """
    from .frameworks import dllite_axiom_space_size

    h = EMPTY_TBOX
    for _ in range(dllite_axiom_space_size(sig) + 1):
        answer = teacher.answer_eq(h)
        if _yes(answer):
            return h
        h = h.with_axiom(_counterexample_axiom(answer))
    raise CapExhaustedError("equivalence-query budget exceeded the axiom space")


def _tboxes_of_size(pool: list[tuple[Axiom, int]], total: int):
    """Canonical axiom sets with sizes summing to ``total``; pool sorted."""
    if total == 0:
        yield EMPTY_TBOX
        return

    def grow(start: int, budget: int, acc: list[Axiom]):
        for idx in range(start, len(pool)):
            axiom, s = pool[idx]
            if s > budget:
                break
            acc.append(axiom)
            if s == budget:
                yield TBox(acc)
            else:
                yield from grow(idx + 1, budget - s, acc)
            acc.pop()

    yield from grow(0, total, [])


def learn_elh_enumerate(
    teacher: TeacherHandle, sig: Signature, max_size: int = 8, depth_cap: int | None = None
) -> TBox:
    """Pose equivalence queries over all TBoxes of increasing total size.

    Candidates mutually entailing an already-queried TBox are skipped; they
    are bucketed by the pairwise-subsumption fingerprint over the pool's
    concepts (one saturation per candidate), and confirmed against the
    bucket by mutual entailment.  The query count grows exponentially with
    the target size; this is the generic halting strategy, not a polynomial
    one.
    """
    if depth_cap is None:
        depth_cap = max_size
    pool: list[tuple[Axiom, int]] = []
    for example in enumerate_examples(framework("elh"), sig, depth_cap, max_size):
        assert isinstance(example, AxiomExample)
        pool.append((example.axiom, size_of(example.axiom)))
    pool.sort(key=lambda pair: (pair[1], axiom_to_str(pair[0])))
    sides = {a.lhs for a, _ in pool if isinstance(a, CI)}
    sides |= {a.rhs for a, _ in pool if isinstance(a, CI)}
    probe_concepts = tuple(sorted(sides, key=concept_to_str))
    roles = sorted(sig.role_names)

    def fingerprint(t: TBox):
        pairs = reasoner.subsumption_matrix(t, probe_concepts)
        role_pairs = frozenset(
            (r, s) for r in roles for s in roles if reasoner.entails(t, RI(r, s))
        )
        return (pairs, role_pairs)

    queried: dict[object, list[TBox]] = {}
    for total in range(0, max_size + 1):
        for candidate in _tboxes_of_size(pool, total):
            fp = fingerprint(candidate)
            bucket = queried.setdefault(fp, [])
            if any(reasoner.equivalent(candidate, seen) for seen in bucket):
                continue
            if _yes(teacher.answer_eq(candidate)):
                return candidate
            bucket.append(candidate)
    raise EnumerationExhaustedError(
        f"no equivalent TBox of size <= {max_size} over the given signature"
    )


# ---------------------------------------------------------------------------
# PAC conversion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PacParams:
    epsilon: float
    delta: float

    def __post_init__(self) -> None:
        if not (0 < self.epsilon < 1 and 0 < self.delta < 1):
            raise ValueError("epsilon and delta must lie strictly in (0, 1)")


def pac_sample_size(params: PacParams, round_index: int) -> int:
    """Samples replacing the i-th equivalence query: ceil((ln(1/δ)+i ln 2)/ε)."""
    return math.ceil(
        (math.log(1 / params.delta) + round_index * math.log(2)) / params.epsilon
    )


class _PacConverged(Exception):
    def __init__(self, hypothesis: TBox):
        super().__init__("sampled hypothesis is probably approximately correct")
        self.hypothesis = hypothesis


class _SampleBackedTeacher:
    """Intercepts equivalence queries and answers them from labeled samples."""

    def __init__(self, teacher, fw: LearningFramework, params: PacParams):
        self._teacher = teacher
        self._framework = fw
        self._params = params
        self._round = 0

    def answer_mq(self, e: Example) -> Answer:
        return self._teacher.answer_mq(e)

    def answer_eq(self, h: TBox) -> Answer:
        self._round += 1
        for _ in range(pac_sample_size(self._params, self._round)):
            sample = self._teacher.answer_sq()
            assert isinstance(sample, Sample)
            example, label = sample.labeled.example, sample.labeled.label
            if is_member(self._framework, h, example) != label:
                return Counterexample(example)
        raise _PacConverged(h)


def pac_wrap(
    inner: Callable[..., TBox],
    teacher,
    sig: Signature,
    fw: LearningFramework,
    params: PacParams,
    **inner_kwargs,
) -> TBox:
    """Run an exact learner in the PAC regime.

    Each intercepted equivalence query is replaced by a batch of sample
    queries; a misclassified sample is handed to the inner learner as the
    counterexample, and a fully consistent batch ends the run with the
    current hypothesis.
    """
    proxy = _SampleBackedTeacher(teacher, fw, params)
    try:
        return inner(proxy, sig, **inner_kwargs)
    except _PacConverged as done:
        return done.hypothesis


#: Algorithm ids accepted by the harness and the CLI.
LEARNERS: dict[str, Callable[..., TBox]] = {
    "toy-mq": learn_toy_atomic,
    "horn-mqeq": learn_horn,
    "dllite-mq": learn_dllite_mq,
    "dllite-eq": learn_dllite_eq,
    "elh-enum-eq": learn_elh_enumerate,
    "conj-mq-exhaustive": learn_conj_exhaustive,
}

#: Framework each learner operates in.
LEARNER_FRAMEWORKS: dict[str, str] = {
    "toy-mq": "toy-atomic",
    "horn-mqeq": "toy-conj",
    "dllite-mq": "dllite",
    "dllite-eq": "dllite",
    "elh-enum-eq": "elh",
    "conj-mq-exhaustive": "toy-conj",
}

#: Learners whose equivalence queries the PAC wrapper may intercept.
EQ_LEARNERS = frozenset({"horn-mqeq", "dllite-eq", "elh-enum-eq"})
