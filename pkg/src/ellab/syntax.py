"""Syntax of the EL family: concept expressions, axioms, TBoxes and ABoxes.

Concept expressions are immutable trees built from concept names, ``top``,
conjunction and existential restriction.  All public constructors and the
parser produce *canonical* forms:

* conjunctions are flattened, duplicate-free, never contain ``top`` and are
  ordered lexicographically by their printed form;
* a conjunction of one thing is that thing, of nothing is ``top``.

Canonical forms make structural equality coincide with syntactic identity,
which is what the TBox set semantics and every enumeration in this package
rely on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Union

RESERVED_WORDS = frozenset({"top", "some", "role"})

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

#: Prefix of machinery-generated concept names.  Names in this namespace are
#: excluded from signatures and never admitted by fragment validators.
FRESH_PREFIX = "__x"


def is_valid_identifier(token: str) -> bool:
    """True iff ``token`` may name a concept, role or individual."""
    return bool(_IDENT_RE.match(token)) and token not in RESERVED_WORDS


def check_identifier(token: str) -> str:
    if not _IDENT_RE.match(token or ""):
        raise ValueError(f"invalid identifier: {token!r}")
    if token in RESERVED_WORDS:
        raise ValueError(f"reserved word used as identifier: {token!r}")
    return token


# ---------------------------------------------------------------------------
# Concept expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Top:
    """The universal concept."""

    def __repr__(self) -> str:
        return "Top()"


@dataclass(frozen=True)
class Name:
    """An atomic concept name."""

    name: str

    def __post_init__(self) -> None:
        check_identifier(self.name)


@dataclass(frozen=True)
class Conj:
    """A conjunction of at least two concepts.

    Raw construction does not canonicalize; use :func:`conjunction` unless
    the parts are already canonical, flat, sorted and duplicate-free.
    """

    parts: tuple["ConceptExpr", ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("conjunction needs at least two conjuncts")


@dataclass(frozen=True)
class Exists:
    """An existential restriction ``some(role, filler)``."""

    role: str
    filler: "ConceptExpr"

    def __post_init__(self) -> None:
        check_identifier(self.role)


ConceptExpr = Union[Top, Name, Conj, Exists]

TOP = Top()


@lru_cache(maxsize=None)
def concept_to_str(c: ConceptExpr) -> str:
    """Canonical text of a concept in the TBox grammar."""
    if isinstance(c, Top):
        return "top"
    if isinstance(c, Name):
        return c.name
    if isinstance(c, Exists):
        return f"some({c.role}, {concept_to_str(c.filler)})"
    if isinstance(c, Conj):
        rendered = []
        for part in c.parts:
            text = concept_to_str(part)
            if isinstance(part, Conj):  # non-canonical nesting needs parens
                text = f"({text})"
            rendered.append(text)
        return " & ".join(rendered)
    raise TypeError(f"not a concept expression: {c!r}")


@lru_cache(maxsize=None)
def canonicalize(c: ConceptExpr) -> ConceptExpr:
    """Canonical form: flat, sorted, duplicate-free, no ``top`` conjuncts."""
    if isinstance(c, (Top, Name)):
        return c
    if isinstance(c, Exists):
        return Exists(c.role, canonicalize(c.filler))
    if isinstance(c, Conj):
        flat: list[ConceptExpr] = []
        for part in c.parts:
            part = canonicalize(part)
            if isinstance(part, Conj):
                flat.extend(part.parts)
            elif not isinstance(part, Top):
                flat.append(part)
        unique = {concept_to_str(p): p for p in flat}
        parts = tuple(unique[k] for k in sorted(unique))
        if not parts:
            return TOP
        if len(parts) == 1:
            return parts[0]
        return Conj(parts)
    raise TypeError(f"not a concept expression: {c!r}")


def conjunction(parts: Iterable[ConceptExpr]) -> ConceptExpr:
    """Canonical conjunction of arbitrarily many concepts."""
    parts = tuple(parts)
    if not parts:
        return TOP
    if len(parts) == 1:
        return canonicalize(parts[0])
    return canonicalize(Conj(parts))


def conjuncts_of(c: ConceptExpr) -> tuple[ConceptExpr, ...]:
    """Top-level conjuncts of ``c`` (itself, if not a conjunction)."""
    if isinstance(c, Conj):
        return c.parts
    if isinstance(c, Top):
        return ()
    return (c,)


# ---------------------------------------------------------------------------
# Axioms and TBoxes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CI:
    """Concept inclusion ``lhs <= rhs``."""

    lhs: ConceptExpr
    rhs: ConceptExpr


@dataclass(frozen=True)
class RI:
    """Role inclusion ``lhs <= rhs``."""

    lhs: str
    rhs: str

    def __post_init__(self) -> None:
        check_identifier(self.lhs)
        check_identifier(self.rhs)


Axiom = Union[CI, RI]


def canonicalize_axiom(a: Axiom) -> Axiom:
    if isinstance(a, CI):
        return CI(canonicalize(a.lhs), canonicalize(a.rhs))
    return a


@lru_cache(maxsize=None)
def axiom_to_str(a: Axiom) -> str:
    if isinstance(a, CI):
        return f"ci: {concept_to_str(a.lhs)} <= {concept_to_str(a.rhs)}"
    return f"ri: {a.lhs} <= {a.rhs}"


class TBox:
    """A finite, duplicate-free set of axioms in canonical form.

    Inserting an axiom that is canonically equal to a present one is a no-op,
    so two TBoxes are ``==`` iff they contain the same canonical axioms.
    Iteration order is deterministic (lexicographic on printed form).
    """

    __slots__ = ("axioms",)

    def __init__(self, axioms: Iterable[Axiom] = ()):
        object.__setattr__(
            self, "axioms", frozenset(canonicalize_axiom(a) for a in axioms)
        )

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("TBox is immutable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TBox) and self.axioms == other.axioms

    def __hash__(self) -> int:
        return hash(self.axioms)

    def __len__(self) -> int:
        return len(self.axioms)

    def __iter__(self) -> Iterator[Axiom]:
        return iter(sorted(self.axioms, key=axiom_to_str))

    def __contains__(self, a: Axiom) -> bool:
        return canonicalize_axiom(a) in self.axioms

    def __repr__(self) -> str:
        return f"TBox({sorted(axiom_to_str(a) for a in self.axioms)})"

    def union(self, other: "TBox | Iterable[Axiom]") -> "TBox":
        extra = other.axioms if isinstance(other, TBox) else other
        return TBox([*self.axioms, *extra])

    def with_axiom(self, a: Axiom) -> "TBox":
        return TBox([*self.axioms, a])

    @property
    def concept_inclusions(self) -> tuple[CI, ...]:
        return tuple(a for a in self if isinstance(a, CI))

    @property
    def role_inclusions(self) -> tuple[RI, ...]:
        return tuple(a for a in self if isinstance(a, RI))


EMPTY_TBOX = TBox()


def print_tbox(t: TBox) -> str:
    """Deterministic canonical text; inverse of :func:`ellab.parser.parse_tbox`."""
    return "".join(axiom_to_str(a) + "\n" for a in t)


# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    concept_names: frozenset[str]
    role_names: frozenset[str]

    @staticmethod
    def of(concepts: Iterable[str] = (), roles: Iterable[str] = ()) -> "Signature":
        return Signature(frozenset(concepts), frozenset(roles))

    def union(self, other: "Signature") -> "Signature":
        return Signature(
            self.concept_names | other.concept_names,
            self.role_names | other.role_names,
        )


def _collect_names(c: ConceptExpr, concepts: set[str], roles: set[str]) -> None:
    if isinstance(c, Name):
        concepts.add(c.name)
    elif isinstance(c, Exists):
        roles.add(c.role)
        _collect_names(c.filler, concepts, roles)
    elif isinstance(c, Conj):
        for part in c.parts:
            _collect_names(part, concepts, roles)


def signature_of(x: "TBox | Axiom | ConceptExpr") -> Signature:
    """The concept and role names syntactically occurring in ``x``.

    Machinery-generated names (``__x`` prefix) are never part of a signature.
    """
    concepts: set[str] = set()
    roles: set[str] = set()
    items: Iterable[Axiom]
    if isinstance(x, TBox):
        items = x.axioms
    elif isinstance(x, (CI, RI)):
        items = [x]
    else:
        _collect_names(x, concepts, roles)
        items = []
    for a in items:
        if isinstance(a, CI):
            _collect_names(a.lhs, concepts, roles)
            _collect_names(a.rhs, concepts, roles)
        else:
            roles.add(a.lhs)
            roles.add(a.rhs)
    concepts = {n for n in concepts if not n.startswith(FRESH_PREFIX)}
    return Signature(frozenset(concepts), frozenset(roles))


# ---------------------------------------------------------------------------
# Size and depth
# ---------------------------------------------------------------------------
#
# Size counts every name occurrence and every constructor occurrence: ``top``
# is one constructor, a conjunction node counts once, an existential counts
# once plus one for its role name, an inclusion counts once.  Depth is the
# maximal nesting of existential restrictions.


@lru_cache(maxsize=None)
def size_of(x: "ConceptExpr | Axiom | TBox") -> int:
    if isinstance(x, Top):
        return 1
    if isinstance(x, Name):
        return 1
    if isinstance(x, Conj):
        return 1 + sum(size_of(p) for p in x.parts)
    if isinstance(x, Exists):
        return 2 + size_of(x.filler)
    if isinstance(x, CI):
        return 1 + size_of(x.lhs) + size_of(x.rhs)
    if isinstance(x, RI):
        return 3
    if isinstance(x, TBox):
        return sum(size_of(a) for a in x.axioms)
    raise TypeError(f"size_of undefined for {x!r}")


@lru_cache(maxsize=None)
def depth_of(c: ConceptExpr) -> int:
    if isinstance(c, (Top, Name)):
        return 0
    if isinstance(c, Conj):
        return max(depth_of(p) for p in c.parts)
    if isinstance(c, Exists):
        return 1 + depth_of(c.filler)
    raise TypeError(f"depth_of undefined for {c!r}")


# ---------------------------------------------------------------------------
# ABoxes and instance queries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConceptAssertion:
    """``A(a)`` with ``A`` a concept name."""

    concept: str
    individual: str

    def __post_init__(self) -> None:
        check_identifier(self.concept)
        check_identifier(self.individual)


@dataclass(frozen=True)
class RoleAssertion:
    """``r(a, b)``."""

    role: str
    subject: str
    object: str

    def __post_init__(self) -> None:
        check_identifier(self.role)
        check_identifier(self.subject)
        check_identifier(self.object)


Assertion = Union[ConceptAssertion, RoleAssertion]


def assertion_to_str(a: Assertion) -> str:
    if isinstance(a, ConceptAssertion):
        return f"{a.concept}({a.individual})"
    return f"{a.role}({a.subject}, {a.object})"


class ABox:
    """A finite duplicate-free set of assertions."""

    __slots__ = ("assertions",)

    def __init__(self, assertions: Iterable[Assertion] = ()):
        object.__setattr__(self, "assertions", frozenset(assertions))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ABox is immutable")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ABox) and self.assertions == other.assertions

    def __hash__(self) -> int:
        return hash(self.assertions)

    def __len__(self) -> int:
        return len(self.assertions)

    def __iter__(self) -> Iterator[Assertion]:
        return iter(sorted(self.assertions, key=assertion_to_str))

    def __repr__(self) -> str:
        return f"ABox({sorted(assertion_to_str(a) for a in self.assertions)})"

    def individuals(self) -> frozenset[str]:
        out: set[str] = set()
        for a in self.assertions:
            if isinstance(a, ConceptAssertion):
                out.add(a.individual)
            else:
                out.add(a.subject)
                out.add(a.object)
        return frozenset(out)


@dataclass(frozen=True)
class ConceptQuery:
    """Instance query ``C(a)`` with ``C`` an arbitrary concept."""

    concept: ConceptExpr
    individual: str


@dataclass(frozen=True)
class RoleQuery:
    """Instance query ``r(a, b)``."""

    role: str
    subject: str
    object: str


IQ = Union[ConceptQuery, RoleQuery]


def iq_to_str(q: IQ) -> str:
    if isinstance(q, ConceptQuery):
        return f"{concept_to_str(q.concept)}({q.individual})"
    return f"{q.role}({q.subject}, {q.object})"


def iq_individuals(q: IQ) -> frozenset[str]:
    if isinstance(q, ConceptQuery):
        return frozenset({q.individual})
    return frozenset({q.subject, q.object})
