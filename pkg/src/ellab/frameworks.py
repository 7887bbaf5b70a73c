"""Learning frameworks: example spaces, membership and fragment validators.

A framework binds a hypothesis space (TBoxes of a fragment) to an example
space (axioms, or ABox/query pairs) through the membership predicate that
a truthful teacher answers.  Five fragments are provided:

``toy-atomic``
    inclusions between concept names only;
``toy-conj``
    a conjunction of concept names on the left, a name on the right
    (propositional Horn);
``dllite``
    inclusions between basic concepts (a name or an unqualified existential
    ``some(r, top)``) plus role inclusions;
``elh``
    the full concept grammar with role inclusions;
``elh-iq``
    ``elh`` hypotheses whose examples are (ABox, instance query) pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Union

from . import reasoner
from .syntax import (
    ABox,
    Assertion,
    Axiom,
    CI,
    ConceptAssertion,
    ConceptExpr,
    ConceptQuery,
    Conj,
    Exists,
    IQ,
    Name,
    RI,
    RoleAssertion,
    RoleQuery,
    Signature,
    TBox,
    TOP,
    Top,
    assertion_to_str,
    axiom_to_str,
    canonicalize,
    canonicalize_axiom,
    concept_to_str,
    conjunction,
    conjuncts_of,
    depth_of,
    iq_individuals,
    iq_to_str,
    size_of,
)


class FragmentViolationError(ValueError):
    """A hypothesis or example falls outside the framework's fragment."""


# ---------------------------------------------------------------------------
# Examples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomExample:
    axiom: Axiom

    def __post_init__(self) -> None:
        object.__setattr__(self, "axiom", canonicalize_axiom(self.axiom))


@dataclass(frozen=True)
class DataExample:
    """An ABox together with an instance query over its individuals."""

    abox: ABox
    query: IQ

    def __post_init__(self) -> None:
        if not iq_individuals(self.query) <= self.abox.individuals():
            raise ValueError("query mentions individuals missing from the ABox")


Example = Union[AxiomExample, DataExample]


@dataclass(frozen=True)
class LabeledExample:
    example: Example
    label: bool


def example_to_str(e: Example) -> str:
    if isinstance(e, AxiomExample):
        return axiom_to_str(e.axiom)
    assertions = "; ".join(assertion_to_str(a) for a in e.abox)
    return f"{{{assertions}}} |= {iq_to_str(e.query)}"


def size_of_example(e: Example) -> int:
    """Size measure examples are charged against in query accounting."""
    if isinstance(e, AxiomExample):
        return size_of(e.axiom)
    total = 0
    for a in e.abox:
        total += 2 if isinstance(a, ConceptAssertion) else 3
    if isinstance(e.query, ConceptQuery):
        total += size_of(e.query.concept) + 1
    else:
        total += 3
    return total


# ---------------------------------------------------------------------------
# Fragment shape checks
# ---------------------------------------------------------------------------


def _is_name(c: ConceptExpr) -> bool:
    return isinstance(c, Name)


def _is_name_conjunction(c: ConceptExpr) -> bool:
    c = canonicalize(c)
    if isinstance(c, Name):
        return True
    return isinstance(c, Conj) and all(isinstance(p, Name) for p in c.parts)


def _is_basic(c: ConceptExpr) -> bool:
    c = canonicalize(c)
    if isinstance(c, Name):
        return True
    return isinstance(c, Exists) and isinstance(c.filler, Top)


def _toy_atomic_axiom(a: Axiom) -> bool:
    return isinstance(a, CI) and _is_name(a.lhs) and _is_name(a.rhs)


def _toy_conj_axiom(a: Axiom) -> bool:
    return isinstance(a, CI) and _is_name_conjunction(a.lhs) and _is_name(a.rhs)


def _dllite_axiom(a: Axiom) -> bool:
    if isinstance(a, RI):
        return True
    return _is_basic(a.lhs) and _is_basic(a.rhs)


def _elh_axiom(a: Axiom) -> bool:
    return isinstance(a, (CI, RI))


_AXIOM_CHECKS: dict[str, Callable[[Axiom], bool]] = {
    "toy-atomic": _toy_atomic_axiom,
    "toy-conj": _toy_conj_axiom,
    "dllite": _dllite_axiom,
    "elh": _elh_axiom,
    "elh-iq": _elh_axiom,
}


# ---------------------------------------------------------------------------
# Frameworks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LearningFramework:
    """One (example space, hypothesis space, membership) triple."""

    fragment_id: str
    example_kind: str  # "axiom" or "data"

    def admits_axiom(self, a: Axiom) -> bool:
        return _AXIOM_CHECKS[self.fragment_id](canonicalize_axiom(a))

    def admits_hypothesis(self, t: TBox) -> bool:
        return all(self.admits_axiom(a) for a in t)

    def admits_example(self, e: Example) -> bool:
        if self.example_kind == "axiom":
            return isinstance(e, AxiomExample) and self.admits_axiom(e.axiom)
        return isinstance(e, DataExample)

    def require_hypothesis(self, t: TBox) -> TBox:
        if not self.admits_hypothesis(t):
            raise FragmentViolationError(
                f"hypothesis not admitted by fragment {self.fragment_id}"
            )
        return t

    def require_example(self, e: Example) -> Example:
        if not self.admits_example(e):
            raise FragmentViolationError(
                f"example not admitted by fragment {self.fragment_id}: "
                f"{example_to_str(e)}"
            )
        return e


FRAMEWORKS: dict[str, LearningFramework] = {
    "toy-atomic": LearningFramework("toy-atomic", "axiom"),
    "toy-conj": LearningFramework("toy-conj", "axiom"),
    "dllite": LearningFramework("dllite", "axiom"),
    "elh": LearningFramework("elh", "axiom"),
    "elh-iq": LearningFramework("elh-iq", "data"),
}


def framework(fragment_id: str) -> LearningFramework:
    try:
        return FRAMEWORKS[fragment_id]
    except KeyError:
        raise ValueError(f"unknown framework: {fragment_id!r}") from None


def is_member(f: LearningFramework, h: TBox, e: Example) -> bool:
    """Membership of an example in the set a hypothesis defines."""
    f.require_hypothesis(h)
    f.require_example(e)
    if isinstance(e, AxiomExample):
        return reasoner.entails(h, e.axiom)
    return reasoner.iq_entails(h, e.abox, e.query)


def is_counterexample(
    f: LearningFramework, t: TBox, h: TBox, e: Example
) -> bool:
    """True iff ``e`` lies in the symmetric difference of the two μ-sets."""
    return is_member(f, t, e) != is_member(f, h, e)


# ---------------------------------------------------------------------------
# Axiom-to-data-example conversion
# ---------------------------------------------------------------------------


def _abox_of_concept(c: ConceptExpr, root: str, counter: itertools.count) -> list[Assertion]:
    out: list[Assertion] = []
    for part in conjuncts_of(canonicalize(c)):
        if isinstance(part, Name):
            out.append(ConceptAssertion(part.name, root))
        elif isinstance(part, Exists):
            child = f"a{next(counter)}"
            out.append(RoleAssertion(part.role, root, child))
            out.extend(_abox_of_concept(part.filler, child, counter))
    return out


#: Concept name asserted when the left-hand side is ``top``: any name foreign
#: to both hypothesis and target makes the data example equivalent to the
#: axiom, and this one is never admitted into user signatures.
_AUX_MARK = "__aux"


def axiom_to_data_example(a: Axiom) -> DataExample:
    """Data example equivalent to an axiom under instance-query membership.

    For a concept inclusion the ABox is the syntax tree of the left-hand
    side rooted at ``a``; for a role inclusion it is a single role edge.
    """
    a = canonicalize_axiom(a)
    if isinstance(a, RI):
        return DataExample(
            ABox([RoleAssertion(a.lhs, "a", "b")]), RoleQuery(a.rhs, "a", "b")
        )
    assertions = _abox_of_concept(a.lhs, "a", itertools.count())
    if not assertions:  # lhs is top: mark the root with a foreign name
        assertions = [ConceptAssertion(_AUX_MARK, "a")]
    return DataExample(ABox(assertions), ConceptQuery(a.rhs, "a"))


# ---------------------------------------------------------------------------
# Example enumeration
# ---------------------------------------------------------------------------


def _concepts_by_size(
    sig: Signature, size_cap: int, depth_cap: int
) -> dict[int, list[ConceptExpr]]:
    """Canonical concepts over ``sig``, grouped by size, text-sorted within."""
    names = sorted(sig.concept_names)
    roles = sorted(sig.role_names)
    by_size: dict[int, list[ConceptExpr]] = {}
    if size_cap >= 1:
        by_size[1] = sorted(
            [TOP] + [Name(n) for n in names], key=concept_to_str
        )
    for s in range(2, size_cap + 1):
        found: list[ConceptExpr] = []
        for r in roles:
            for filler in by_size.get(s - 2, ()):
                c = Exists(r, filler)
                if depth_of(c) <= depth_cap:
                    found.append(c)
        # conjunction parts: names and existentials of smaller size
        pool: list[ConceptExpr] = []
        for ps in range(1, s - 1):
            pool.extend(
                c for c in by_size.get(ps, ()) if not isinstance(c, Top)
            )

        def grow(start: int, budget: int, acc: list[ConceptExpr]) -> None:
            for idx in range(start, len(pool)):
                part = pool[idx]
                part_size = size_of(part)
                if part_size > budget:
                    continue
                acc.append(part)
                if part_size == budget and len(acc) >= 2:
                    found.append(conjunction(acc))
                elif part_size < budget:
                    grow(idx + 1, budget - part_size, acc)
                acc.pop()

        grow(0, s - 1, [])
        if found:
            unique = {concept_to_str(c): c for c in found}
            by_size[s] = [unique[k] for k in sorted(unique)]
    return by_size


def _axiom_examples_sorted(axioms: list[Axiom]) -> Iterator[Example]:
    ordered = sorted(
        {axiom_to_str(a): a for a in map(canonicalize_axiom, axioms)}.items(),
        key=lambda kv: (size_of(kv[1]), kv[0]),
    )
    for _, a in ordered:
        yield AxiomExample(a)


def _enumerate_toy_atomic(sig: Signature) -> Iterator[Example]:
    names = sorted(sig.concept_names)
    yield from _axiom_examples_sorted(
        [CI(Name(a), Name(b)) for a in names for b in names]
    )


def _enumerate_toy_conj(sig: Signature) -> Iterator[Example]:
    names = sorted(sig.concept_names)
    for k in range(1, len(names) + 1):
        for subset in itertools.combinations(names, k):
            lhs = conjunction([Name(n) for n in subset])
            for b in names:
                yield AxiomExample(CI(lhs, Name(b)))


def _enumerate_dllite(sig: Signature) -> Iterator[Example]:
    basics = [Name(n) for n in sorted(sig.concept_names)]
    basics += [Exists(r, TOP) for r in sorted(sig.role_names)]
    axioms: list[Axiom] = [CI(b1, b2) for b1 in basics for b2 in basics]
    axioms += [RI(r, s) for r in sorted(sig.role_names) for s in sorted(sig.role_names)]
    yield from _axiom_examples_sorted(axioms)


def _enumerate_elh(sig: Signature, depth_cap: int, size_cap: int) -> Iterator[Example]:
    by_size = _concepts_by_size(sig, max(size_cap - 2, 0), depth_cap)
    roles = sorted(sig.role_names)
    for s in range(3, size_cap + 1):
        batch: list[Axiom] = []
        if s == 3:
            batch.extend(RI(r1, r2) for r1 in roles for r2 in roles)
        for lhs_size in range(1, s - 1):
            for lhs in by_size.get(lhs_size, ()):
                for rhs in by_size.get(s - 1 - lhs_size, ()):
                    batch.append(CI(lhs, rhs))
        ordered = sorted(
            {axiom_to_str(a): a for a in batch}.items(), key=lambda kv: kv[0]
        )
        for _, a in ordered:
            yield AxiomExample(a)


def _enumerate_elh_iq(
    sig: Signature, depth_cap: int, size_cap: int
) -> Iterator[Example]:
    individuals = ("a", "b")
    pool: list[Assertion] = [
        ConceptAssertion(n, i)
        for n in sorted(sig.concept_names)
        for i in individuals
    ]
    pool += [
        RoleAssertion(r, i, j)
        for r in sorted(sig.role_names)
        for i in individuals
        for j in individuals
    ]
    concepts = [
        c
        for group in _concepts_by_size(sig, max(size_cap - 3, 0), depth_cap).values()
        for c in group
    ]
    examples: list[tuple[int, str, Example]] = []
    for count in range(1, len(pool) + 1):
        if 2 * count > size_cap:
            break
        for subset in itertools.combinations(pool, count):
            abox = ABox(subset)
            inds = sorted(abox.individuals())
            queries: list[IQ] = [
                ConceptQuery(c, i) for c in concepts for i in inds
            ]
            queries += [
                RoleQuery(r, i, j)
                for r in sorted(sig.role_names)
                for i in inds
                for j in inds
            ]
            for q in queries:
                e = DataExample(abox, q)
                total = size_of_example(e)
                if total <= size_cap:
                    examples.append((total, example_to_str(e), e))
    examples.sort(key=lambda row: (row[0], row[1]))
    seen: set[str] = set()
    for _, text, e in examples:
        if text not in seen:
            seen.add(text)
            yield e


def enumerate_examples(
    f: LearningFramework,
    sig: Signature,
    depth_cap: int = 3,
    size_cap: int = 9,
) -> Iterator[Example]:
    """Deterministic, duplicate-free enumeration in nondecreasing size order.

    Finite for ``toy-atomic``, ``toy-conj`` and ``dllite`` (whose spaces
    ignore the caps); cap-truncated for ``elh`` and ``elh-iq``.
    """
    if depth_cap < 0 or size_cap < 0:
        raise ValueError("enumeration caps must be nonnegative")
    if not sig.concept_names and not sig.role_names:
        return iter(())
    if f.fragment_id == "toy-atomic":
        return _enumerate_toy_atomic(sig)
    if f.fragment_id == "toy-conj":
        return _enumerate_toy_conj(sig)
    if f.fragment_id == "dllite":
        return _enumerate_dllite(sig)
    if f.fragment_id == "elh":
        return _enumerate_elh(sig, depth_cap, size_cap)
    if f.fragment_id == "elh-iq":
        return _enumerate_elh_iq(sig, depth_cap, size_cap)
    raise ValueError(f"unknown framework: {f.fragment_id!r}")


def dllite_axiom_space_size(sig: Signature) -> int:
    """Closed-form count of the DL-Lite axiom space over a signature."""
    n_c, n_r = len(sig.concept_names), len(sig.role_names)
    return (n_c + n_r) ** 2 + n_r**2
