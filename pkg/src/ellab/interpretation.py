"""Finite interpretations and direct model checking.

This is the semantic ground truth used by the property tests: extensions are
computed bottom-up from the defining equations, with no reasoning involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .syntax import (
    Axiom,
    CI,
    ConceptExpr,
    Conj,
    Exists,
    Name,
    RI,
    TBox,
    Top,
)

Element = Hashable


@dataclass(frozen=True)
class Interpretation:
    """A pair of a finite non-empty domain and an extension function."""

    domain: frozenset
    concept_ext: Mapping[str, frozenset]
    role_ext: Mapping[str, frozenset]
    individual_map: Mapping[str, Element] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.domain:
            raise ValueError("interpretation domain must be non-empty")
        for name, ext in self.concept_ext.items():
            if not ext <= self.domain:
                raise ValueError(f"extension of {name} leaves the domain")
        for name, pairs in self.role_ext.items():
            for d, e in pairs:
                if d not in self.domain or e not in self.domain:
                    raise ValueError(f"extension of {name} leaves the domain")
        for ind, elem in self.individual_map.items():
            if elem not in self.domain:
                raise ValueError(f"individual {ind} mapped outside the domain")


def extension_of(c: ConceptExpr, i: Interpretation) -> frozenset:
    """The set of domain elements in ``c``, computed bottom-up."""
    if isinstance(c, Top):
        return i.domain
    if isinstance(c, Name):
        return i.concept_ext.get(c.name, frozenset())
    if isinstance(c, Conj):
        ext = i.domain
        for part in c.parts:
            ext = ext & extension_of(part, i)
        return ext
    if isinstance(c, Exists):
        pairs = i.role_ext.get(c.role, frozenset())
        filler = extension_of(c.filler, i)
        return frozenset(d for d, e in pairs if e in filler)
    raise TypeError(f"not a concept expression: {c!r}")


def satisfies(i: Interpretation, a: "Axiom | TBox") -> bool:
    """Subset check for a single axiom; conjunction over a TBox."""
    if isinstance(a, TBox):
        return all(satisfies(i, ax) for ax in a)
    if isinstance(a, CI):
        return extension_of(a.lhs, i) <= extension_of(a.rhs, i)
    if isinstance(a, RI):
        lhs = i.role_ext.get(a.lhs, frozenset())
        rhs = i.role_ext.get(a.rhs, frozenset())
        return lhs <= rhs
    raise TypeError(f"not an axiom: {a!r}")
