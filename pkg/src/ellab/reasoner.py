"""Entailment for the EL family with role hierarchies.

Two independent decision routes are provided:

* :func:`entails` normalizes the TBox into four normal-form axiom shapes and
  saturates a subsumer table with the standard completion rules (extended to
  look existential axioms up through the role hierarchy).  This is the engine
  everything else in the package delegates to.

* :func:`canonical_check` builds the canonical model of the left-hand concept
  by chasing TBox axioms over a structure with one element per reachable
  subconcept, then evaluates the right-hand concept at the root.  It shares
  no code with the saturation route and serves as its cross-validation
  oracle.

:func:`iq_entails` answers instance queries by running the same chase over
the ABox individuals.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .syntax import (
    ABox,
    Axiom,
    CI,
    ConceptAssertion,
    ConceptExpr,
    ConceptQuery,
    Conj,
    Exists,
    FRESH_PREFIX,
    IQ,
    Name,
    RI,
    RoleQuery,
    TBox,
    Top,
    canonicalize,
    canonicalize_axiom,
    conjuncts_of,
    depth_of,
    iq_individuals,
    size_of,
)

#: Pseudo-atom standing for the universal concept inside the saturation
#: tables.  The ``*`` makes collision with user identifiers impossible.
_TOP_ATOM = "*top*"

_IQ_SWEEP_CAP = 100_000


class FuelExhaustedError(RuntimeError):
    """The canonical-model chase did not stabilize within its fuel budget.

    Callers must treat this as "no answer", never as a truth value.
    """


# ---------------------------------------------------------------------------
# Role hierarchy
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def role_closure(t: TBox) -> Mapping[str, frozenset[str]]:
    """Reflexive-transitive closure of the declared role inclusions."""
    direct: dict[str, set[str]] = defaultdict(set)
    roles: set[str] = set()
    for a in t.role_inclusions:
        direct[a.lhs].add(a.rhs)
        roles.update((a.lhs, a.rhs))
    closure: dict[str, frozenset[str]] = {}
    for r in roles:
        seen = {r}
        frontier = [r]
        while frontier:
            s = frontier.pop()
            for nxt in direct.get(s, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        closure[r] = frozenset(seen)
    return closure


def _super_roles(closure: Mapping[str, frozenset[str]], r: str) -> frozenset[str]:
    return closure.get(r, frozenset((r,)))


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalizedTBox:
    """Normal-form view of a TBox over original plus fresh definitional names.

    Axiom shapes: ``nf1`` is ``A <= B``, ``nf2`` is ``A1 & A2 <= B``,
    ``nf3`` is ``A <= some(r, B)`` and ``nf4`` is ``some(r, A) <= B`` where
    all of ``A``, ``B`` range over atoms (names, fresh names, or top).
    The extension is conservative: entailment of axioms over the original
    signature is unchanged.
    """

    original: TBox
    nf1: tuple[tuple[str, str], ...]
    nf2: tuple[tuple[str, str, str], ...]
    nf3: tuple[tuple[str, str, str], ...]
    nf4: tuple[tuple[str, str, str], ...]
    fresh_map: tuple[tuple[str, ConceptExpr], ...]
    fresh_count: int
    memo: tuple[tuple[ConceptExpr, str], ...]


class _Normalizer:
    def __init__(self, start: int = 0, memo: dict[ConceptExpr, str] | None = None):
        self.counter = start
        self.memo: dict[ConceptExpr, str] = dict(memo or {})
        self.fresh_map: dict[str, ConceptExpr] = {}
        self.nf1: list[tuple[str, str]] = []
        self.nf2: list[tuple[str, str, str]] = []
        self.nf3: list[tuple[str, str, str]] = []
        self.nf4: list[tuple[str, str, str]] = []

    def _fresh(self) -> str:
        x = f"{FRESH_PREFIX}{self.counter}"
        self.counter += 1
        return x

    def atom(self, c: ConceptExpr) -> str:
        """Atom equivalent to ``c``, defining a fresh name if ``c`` is complex."""
        c = canonicalize(c)
        if isinstance(c, Top):
            return _TOP_ATOM
        if isinstance(c, Name):
            return c.name
        if c in self.memo:
            return self.memo[c]
        x = self._fresh()
        self.memo[c] = x
        self.fresh_map[x] = c
        if isinstance(c, Exists):
            filler = self.atom(c.filler)
            self.nf3.append((x, c.role, filler))
            self.nf4.append((c.role, filler, x))
        else:
            parts = [self.atom(p) for p in c.parts]
            for p in parts:
                self.nf1.append((x, p))
            acc = parts[0]
            for p in parts[1:-1]:
                y = self._fresh()
                self.nf2.append((acc, p, y))
                acc = y
            self.nf2.append((acc, parts[-1], x))
        return x

    def add_ci(self, ci: CI) -> None:
        self.nf1.append((self.atom(ci.lhs), self.atom(ci.rhs)))


@lru_cache(maxsize=None)
def normalize_tbox(t: TBox) -> NormalizedTBox:
    norm = _Normalizer()
    for ci in t.concept_inclusions:
        norm.add_ci(ci)
    return NormalizedTBox(
        original=t,
        nf1=tuple(norm.nf1),
        nf2=tuple(norm.nf2),
        nf3=tuple(norm.nf3),
        nf4=tuple(norm.nf4),
        fresh_map=tuple(sorted(norm.fresh_map.items())),
        fresh_count=norm.counter,
        memo=tuple(sorted(norm.memo.items(), key=lambda kv: kv[1])),
    )


# ---------------------------------------------------------------------------
# Saturation
# ---------------------------------------------------------------------------


def _saturate(
    nf1: Iterable[tuple[str, str]],
    nf2: Iterable[tuple[str, str, str]],
    nf3: Iterable[tuple[str, str, str]],
    nf4: Iterable[tuple[str, str, str]],
    closure: Mapping[str, frozenset[str]],
    seed_atoms: Iterable[str] = (),
) -> dict[str, set[str]]:
    """Completion-rule fixpoint: returns the subsumer table ``S``.

    ``B in S[A]`` iff the normalized axioms entail ``A <= B``.
    """
    by1: dict[str, list[str]] = defaultdict(list)
    by2: dict[str, list[tuple[str, str]]] = defaultdict(list)
    by3: dict[str, list[tuple[str, str]]] = defaultdict(list)
    by4: dict[str, list[tuple[str, str]]] = defaultdict(list)
    atoms: set[str] = {_TOP_ATOM, *seed_atoms}
    for a, b in nf1:
        by1[a].append(b)
        atoms.update((a, b))
    for a1, a2, b in nf2:
        by2[a1].append((a2, b))
        by2[a2].append((a1, b))
        atoms.update((a1, a2, b))
    for a, r, b in nf3:
        by3[a].append((r, b))
        atoms.update((a, b))
    for r, a, b in nf4:
        by4[a].append((r, b))
        atoms.update((a, b))

    subs: dict[str, set[str]] = {a: set() for a in atoms}
    preds: dict[str, set[tuple[str, str]]] = defaultdict(set)
    edges: set[tuple[str, str, str]] = set()
    queue: deque[tuple] = deque()

    def add_subs(a: str, b: str) -> None:
        if b not in subs[a]:
            subs[a].add(b)
            queue.append(("s", a, b))

    def add_edge(a: str, r: str, b: str) -> None:
        if (a, r, b) not in edges:
            edges.add((a, r, b))
            queue.append(("e", a, r, b))

    for a in atoms:
        add_subs(a, a)
        add_subs(a, _TOP_ATOM)

    while queue:
        item = queue.popleft()
        if item[0] == "s":
            _, a, b = item
            for b2 in by1.get(b, ()):
                add_subs(a, b2)
            for other, out in by2.get(b, ()):
                if other in subs[a]:
                    add_subs(a, out)
            for r, target in by3.get(b, ()):
                add_edge(a, r, target)
            # b joined S[a]; existential axioms over b now fire for a's
            # predecessors through the role hierarchy.
            for pred, r in preds[a]:
                for s_role, out in by4.get(b, ()):
                    if s_role in _super_roles(closure, r):
                        add_subs(pred, out)
        else:
            _, a, r, b = item
            preds[b].add((a, r))
            supers = _super_roles(closure, r)
            for filler in list(subs[b]):
                for s_role, out in by4.get(filler, ()):
                    if s_role in supers:
                        add_subs(a, out)
    return subs


# ---------------------------------------------------------------------------
# Entailment
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def entails(t: TBox, a: Axiom) -> bool:
    """True iff every interpretation satisfying ``t`` satisfies ``a``."""
    a = canonicalize_axiom(a)
    if isinstance(a, RI):
        return a.rhs in _super_roles(role_closure(t), a.lhs)
    nf = normalize_tbox(t)
    norm = _Normalizer(start=nf.fresh_count, memo=dict(nf.memo))
    lhs_atom = norm.atom(a.lhs)
    rhs_atom = norm.atom(a.rhs)
    subs = _saturate(
        nf.nf1 + tuple(norm.nf1),
        nf.nf2 + tuple(norm.nf2),
        nf.nf3 + tuple(norm.nf3),
        nf.nf4 + tuple(norm.nf4),
        role_closure(t),
        seed_atoms=(lhs_atom, rhs_atom),
    )
    return rhs_atom in subs[lhs_atom]


def subsumption_matrix(
    t: TBox, concepts: tuple[ConceptExpr, ...]
) -> frozenset[tuple[int, int]]:
    """All pairs (i, j) with ``t |= concepts[i] <= concepts[j]``.

    One saturation answers the whole grid, which is what makes bulk
    equivalence bucketing affordable for the enumerating learner.
    """
    nf = normalize_tbox(t)
    norm = _Normalizer(start=nf.fresh_count, memo=dict(nf.memo))
    atoms = [norm.atom(c) for c in concepts]
    subs = _saturate(
        nf.nf1 + tuple(norm.nf1),
        nf.nf2 + tuple(norm.nf2),
        nf.nf3 + tuple(norm.nf3),
        nf.nf4 + tuple(norm.nf4),
        role_closure(t),
        seed_atoms=atoms,
    )
    return frozenset(
        (i, j)
        for i, a in enumerate(atoms)
        for j, b in enumerate(atoms)
        if b in subs[a]
    )


def entails_tbox(t: TBox, t2: TBox) -> bool:
    return all(entails(t, a) for a in t2)


def equivalent(t: TBox, t2: TBox) -> bool:
    """Mutual entailment; coincides with equality of entailed-axiom sets."""
    return entails_tbox(t, t2) and entails_tbox(t2, t)


# ---------------------------------------------------------------------------
# Canonical-model chase (independent oracle + instance queries)
# ---------------------------------------------------------------------------


class _Chase:
    """Least model of a set of facts under a TBox, one element per concept.

    Anonymous elements are keyed by the canonical filler concept they
    realize, so the structure stays finite even for cyclic TBoxes; the facts
    at each element are exactly the consequences forced by the TBox.
    """

    def __init__(self, t: TBox):
        self.cis = list(t.concept_inclusions)
        self.closure = role_closure(t)
        self.labels: list[set[str]] = []
        self.succ: list[dict[str, set[int]]] = []
        self._elem_of: dict[ConceptExpr, int] = {}

    def new_element(self) -> int:
        self.labels.append(set())
        self.succ.append(defaultdict(set))
        return len(self.labels) - 1

    def element_for(self, c: ConceptExpr) -> int:
        c = canonicalize(c)
        if c in self._elem_of:
            return self._elem_of[c]
        e = self.new_element()
        self._elem_of[c] = e  # registered first so cyclic fillers tie back
        self.install(e, c)
        return e

    def install(self, e: int, c: ConceptExpr) -> None:
        """Make element ``e`` satisfy ``c`` by adding forced facts."""
        if isinstance(c, Name):
            self.labels[e].add(c.name)
            return
        for part in conjuncts_of(canonicalize(c)):
            if isinstance(part, Name):
                self.labels[e].add(part.name)
            elif isinstance(part, Exists):
                self.add_edge(e, part.role, self.element_for(part.filler))

    def add_edge(self, e: int, role: str, target: int) -> None:
        for s in _super_roles(self.closure, role):
            self.succ[e][s].add(target)

    def holds(self, c: ConceptExpr, e: int) -> bool:
        if isinstance(c, Top):
            return True
        if isinstance(c, Name):
            return c.name in self.labels[e]
        if isinstance(c, Conj):
            return all(self.holds(p, e) for p in c.parts)
        if isinstance(c, Exists):
            return any(
                self.holds(c.filler, x) for x in self.succ[e].get(c.role, ())
            )
        raise TypeError(f"not a concept expression: {c!r}")

    def sweep(self) -> bool:
        changed = False
        e = 0
        while e < len(self.labels):
            for ci in self.cis:
                if self.holds(ci.lhs, e) and not self.holds(ci.rhs, e):
                    self.install(e, ci.rhs)
                    changed = True
            e += 1
        return changed

    def run(self, fuel: int) -> None:
        sweeps = 0
        while self.sweep():
            sweeps += 1
            if sweeps > fuel:
                raise FuelExhaustedError(
                    f"chase did not stabilize within {fuel} sweeps"
                )


def default_fuel(t: TBox, ci: CI) -> int:
    """Sweep budget sufficient for acyclic parts; cycles need no unraveling."""
    return size_of(t) + depth_of(canonicalize(ci.rhs)) + 2


def canonical_check(t: TBox, ci: CI, fuel: int | None = None) -> bool:
    """Decide ``t |= ci`` on the canonical model of the left-hand concept.

    Raises :class:`FuelExhaustedError` if the chase is still growing after
    ``fuel`` sweeps; that outcome carries no information about entailment.
    """
    ci = canonicalize_axiom(ci)
    if fuel is None:
        fuel = default_fuel(t, ci)
    chase = _Chase(t)
    root = chase.element_for(ci.lhs)
    chase.run(fuel)
    return chase.holds(canonicalize(ci.rhs), root)


def iq_entails(t: TBox, abox: ABox, q: IQ) -> bool:
    """True iff ``(t, abox)`` entails the instance query ``q``."""
    chase = _Chase(t)
    elem_of_ind: dict[str, int] = {}
    for ind in sorted(abox.individuals() | iq_individuals(q)):
        elem_of_ind[ind] = chase.new_element()
    for assertion in abox:
        if isinstance(assertion, ConceptAssertion):
            chase.labels[elem_of_ind[assertion.individual]].add(assertion.concept)
        else:
            chase.add_edge(
                elem_of_ind[assertion.subject],
                assertion.role,
                elem_of_ind[assertion.object],
            )
    chase.run(_IQ_SWEEP_CAP)
    if isinstance(q, ConceptQuery):
        return chase.holds(canonicalize(q.concept), elem_of_ind[q.individual])
    if isinstance(q, RoleQuery):
        targets = chase.succ[elem_of_ind[q.subject]].get(q.role, ())
        return elem_of_ind[q.object] in targets
    raise TypeError(f"not an instance query: {q!r}")
