"""The exponential family of marked-sequence TBoxes and its adversary.

For ``n`` positions the signature carries paired names ``A1..An`` /
``nA1..nAn`` and a marker ``M``.  Every family member shares the clash
axioms ``Ai & nAi <= M`` and adds one sequence axiom ``s1 & ... & sn <= M``
picking one name from each pair, so there are ``2**n`` pairwise inequivalent
members.  A single conjunction-fragment inclusion is either entailed by all
members or by at most one — which is what makes membership queries useless
against the version-space adversary below.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .frameworks import AxiomExample, Example, framework
from .learners import LEARNERS, CapExhaustedError
from .oracles import Answer, No, Yes
from .reasoner import equivalent
from .syntax import (
    CI,
    Name,
    Signature,
    TBox,
    conjunction,
    conjuncts_of,
)

#: Hard ceiling on the family exponent; 2**n members must stay enumerable.
MAX_FAMILY_EXPONENT = 20


class Lemma1ViolationError(RuntimeError):
    """An inclusion entailed by more than one but not all members."""


@dataclass(frozen=True)
class SigmaFamily:
    n: int
    positive: tuple[str, ...]  # A1..An
    negative: tuple[str, ...]  # nA1..nAn
    marker: str
    shared: TBox  # the clash axioms common to every member

    @property
    def member_count(self) -> int:
        return 2**self.n

    @property
    def signature(self) -> Signature:
        return Signature.of(
            set(self.positive) | set(self.negative) | {self.marker}, set()
        )

    def sequence_names(self, index: int) -> tuple[str, ...]:
        """The chosen pair representatives; bit i=1 picks the negated name.

        ``index`` is the sequence read as a binary string, most significant
        bit first, with the plain name as digit 0.
        """
        if not 0 <= index < self.member_count:
            raise IndexError(f"member index out of range: {index}")
        return tuple(
            self.negative[i] if (index >> (self.n - 1 - i)) & 1 else self.positive[i]
            for i in range(self.n)
        )

    def member(self, index: int) -> TBox:
        lhs = conjunction([Name(s) for s in self.sequence_names(index)])
        return self.shared.with_axiom(CI(lhs, Name(self.marker)))

    def members(self):
        return (self.member(i) for i in range(self.member_count))


def build_family(n: int) -> SigmaFamily:
    if n < 1:
        raise ValueError("family exponent must be at least 1")
    if n > MAX_FAMILY_EXPONENT:
        raise ValueError(
            f"family exponent {n} exceeds the resource cap {MAX_FAMILY_EXPONENT}"
        )
    positive = tuple(f"A{i + 1}" for i in range(n))
    negative = tuple(f"nA{i + 1}" for i in range(n))
    shared = TBox(
        CI(conjunction([Name(p), Name(m)]), Name("M"))
        for p, m in zip(positive, negative)
    )
    return SigmaFamily(n, positive, negative, "M", shared)


# ---------------------------------------------------------------------------
# Classification of an inclusion against the whole family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    """Which disjunct holds: entailed by all members, or by at most one."""

    kind: str  # "all" | "at-most-one"
    entailed_count: int
    witness: int | None  # the single entailing member, when there is one


@lru_cache(maxsize=None)
def _name_positions(fam: SigmaFamily) -> dict[str, tuple[int, bool]]:
    out: dict[str, tuple[int, bool]] = {}
    for i, name in enumerate(fam.positive):
        out[name] = (i, False)
    for i, name in enumerate(fam.negative):
        out[name] = (i, True)
    return out


def _query_parts(fam: SigmaFamily, ci: CI) -> tuple[frozenset[str], str]:
    if not framework("toy-conj").admits_axiom(ci):
        raise ValueError(f"not a conjunction-fragment inclusion: {ci!r}")
    lhs_names = frozenset(p.name for p in conjuncts_of(ci.lhs) if isinstance(p, Name))
    assert isinstance(ci.rhs, Name)
    allowed = set(fam.positive) | set(fam.negative) | {fam.marker}
    if not lhs_names <= allowed or ci.rhs.name not in allowed:
        raise ValueError("inclusion uses names outside the family signature")
    return lhs_names, ci.rhs.name


def _member_entails(
    fam: SigmaFamily, index: int, lhs_names: frozenset[str], rhs: str
) -> bool:
    """Entailment within one member, by forward chaining.

    Every member axiom concludes the marker, so the closure of the left-hand
    conjunction adds at most ``M``: when a clash pair is present, or when the
    member's sequence is contained in the conjunction.
    """
    if rhs in lhs_names:
        return True
    if rhs != fam.marker:
        return False
    positions = _name_positions(fam)
    pos_mask = neg_mask = 0
    for name in lhs_names:
        if name == fam.marker:
            continue
        i, negated = positions[name]
        bit = 1 << (fam.n - 1 - i)
        if negated:
            neg_mask |= bit
        else:
            pos_mask |= bit
    if pos_mask & neg_mask:
        return True
    full = fam.member_count - 1
    return (~index & full & ~pos_mask) == 0 and (index & ~neg_mask) == 0


def classify_ci(fam: SigmaFamily, ci: CI) -> Classification:
    """Brute-force scan of all members; at-most-one violations are fatal."""
    lhs_names, rhs = _query_parts(fam, ci)
    witnesses = [
        index
        for index in range(fam.member_count)
        if _member_entails(fam, index, lhs_names, rhs)
    ]
    count = len(witnesses)
    if count == fam.member_count:
        return Classification("all", count, None)
    if count <= 1:
        return Classification("at-most-one", count, witnesses[0] if witnesses else None)
    raise Lemma1ViolationError(
        f"inclusion entailed by {count} of {fam.member_count} members: {ci!r}"
    )


# ---------------------------------------------------------------------------
# Adversarial membership teacher
# ---------------------------------------------------------------------------


@dataclass
class RunScore:
    passed: bool
    queries: int
    remaining: int
    witness: int | None  # a surviving member not equivalent to the hypothesis


class AdversarialMqTeacher:
    """Answers membership queries so that almost no member is eliminated.

    An inclusion entailed by every member is confirmed (eliminating nothing);
    anything else is denied, which rules out at most the single member that
    would have entailed it.  After k queries at least ``2**n - k`` members
    remain live, so a learner halting early is beaten by a surviving member.
    """

    def __init__(self, fam: SigmaFamily):
        self.family = fam
        self.remaining: set[int] = set(range(fam.member_count))
        self.queries = 0
        self.history: list[tuple[int, int]] = []  # (queries so far, remaining)

    def answer_mq(self, e: Example) -> Answer:
        if not isinstance(e, AxiomExample) or not isinstance(e.axiom, CI):
            raise ValueError("the adversary only answers concept-inclusion queries")
        outcome = classify_ci(self.family, e.axiom)
        self.queries += 1
        if outcome.kind == "all":
            answer: Answer = Yes()
        else:
            if outcome.witness is not None:
                self.remaining.discard(outcome.witness)
            answer = No()
        if len(self.remaining) < self.family.member_count - self.queries:
            raise AssertionError("elimination invariant broken: lost too many members")
        self.history.append((self.queries, len(self.remaining)))
        return answer

    def score(self, hypothesis: TBox) -> RunScore:
        """Judge a halted learner against the surviving version space."""
        survivors = sorted(self.remaining)
        if len(survivors) == 1 and equivalent(self.family.member(survivors[0]), hypothesis):
            return RunScore(True, self.queries, 1, None)
        witness = None
        for index in survivors:
            if not equivalent(self.family.member(index), hypothesis):
                witness = index
                break
        return RunScore(False, self.queries, len(survivors), witness)


@dataclass
class LowerBoundResult:
    n: int
    learner_id: str
    queries: int
    remaining: int
    outcome: str  # "failed" | "passed" | "budget-exhausted"
    witness: int | None = None
    history: list[tuple[int, int]] = field(default_factory=list)


class _BudgetedTeacher:
    def __init__(self, inner: AdversarialMqTeacher, budget: int):
        self._inner = inner
        self._budget = budget

    def answer_mq(self, e: Example) -> Answer:
        if self._inner.queries >= self._budget:
            raise CapExhaustedError(f"membership-query budget {self._budget} spent")
        return self._inner.answer_mq(e)

    def answer_eq(self, h: TBox) -> Answer:
        raise ValueError("the adversary answers membership queries only")


def run_lower_bound(n: int, learner_id: str, budget: int | None = None) -> LowerBoundResult:
    """One adversarial run; the learner must spend ~2**n queries or lose."""
    fam = build_family(n)
    adversary = AdversarialMqTeacher(fam)
    if budget is None:
        budget = fam.member_count
    teacher = _BudgetedTeacher(adversary, budget)
    learner = LEARNERS[learner_id]
    try:
        hypothesis = learner(teacher, fam.signature)
    except CapExhaustedError:
        return LowerBoundResult(
            n, learner_id, adversary.queries, len(adversary.remaining),
            "budget-exhausted", None, adversary.history,
        )
    score = adversary.score(hypothesis)
    outcome = "passed" if score.passed else "failed"
    return LowerBoundResult(
        n, learner_id, score.queries, score.remaining, outcome,
        score.witness, adversary.history,
    )
