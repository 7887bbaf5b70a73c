"""Shared random generators for property-style tests.

Everything is driven by explicit ``random.Random`` seeds so failures are
reproducible from the printed seed alone.
"""

from __future__ import annotations

import itertools
import random

import pytest

from ellab.interpretation import Interpretation
from ellab.syntax import (
    CI,
    ConceptExpr,
    Exists,
    Name,
    RI,
    TBox,
    TOP,
    conjunction,
)


def random_concept(
    rng: random.Random,
    names: list[str],
    roles: list[str],
    depth: int,
) -> ConceptExpr:
    kinds = ["name", "name", "top"]
    if depth > 0:
        if roles:
            kinds += ["exists", "exists"]
        if len(names) >= 2:
            kinds.append("conj")
    kind = rng.choice(kinds)
    if kind == "name":
        return Name(rng.choice(names))
    if kind == "top":
        return TOP
    if kind == "exists":
        return Exists(rng.choice(roles), random_concept(rng, names, roles, depth - 1))
    return conjunction(
        [
            random_concept(rng, names, roles, depth - 1),
            random_concept(rng, names, roles, depth - 1),
        ]
    )


def random_tbox(
    rng: random.Random,
    names: list[str],
    roles: list[str],
    max_axioms: int = 3,
    depth: int = 2,
) -> TBox:
    axioms = []
    for _ in range(rng.randint(0, max_axioms)):
        axioms.append(
            CI(
                random_concept(rng, names, roles, depth),
                random_concept(rng, names, roles, depth),
            )
        )
    if roles and rng.random() < 0.3:
        axioms.append(RI(rng.choice(roles), rng.choice(roles)))
    return TBox(axioms)


def random_interpretation(
    rng: random.Random,
    names: list[str],
    roles: list[str],
    max_domain: int = 4,
) -> Interpretation:
    domain = frozenset(range(rng.randint(1, max_domain)))
    concept_ext = {
        n: frozenset(d for d in domain if rng.random() < 0.5) for n in names
    }
    role_ext = {
        r: frozenset(
            p for p in itertools.product(domain, domain) if rng.random() < 0.4
        )
        for r in roles
    }
    return Interpretation(domain, concept_ext, role_ext)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xE11AB)
