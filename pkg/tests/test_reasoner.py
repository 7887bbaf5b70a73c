"""Saturation entailment, the canonical-model oracle, and instance queries.

The two decision routes are independent implementations; their exhaustive
agreement on a small grid is the main correctness argument (the full-size
grid lives in the acceptance suite).
"""

import pytest

from ellab.interpretation import satisfies
from ellab.parser import parse_abox, parse_tbox
from ellab.reasoner import (
    FuelExhaustedError,
    canonical_check,
    default_fuel,
    entails,
    entails_tbox,
    equivalent,
    iq_entails,
    role_closure,
)
from ellab.syntax import (
    CI,
    ConceptQuery,
    EMPTY_TBOX,
    Exists,
    Name,
    RI,
    RoleQuery,
    TBox,
    TOP,
    conjunction,
)

from conftest import random_concept, random_interpretation, random_tbox


def nested_exists(role: str, depth: int, core) -> object:
    c = core
    for _ in range(depth):
        c = Exists(role, c)
    return c


# ---------------------------------------------------------------------------
# entails
# ---------------------------------------------------------------------------


def test_transitive_chain_entailed():
    t = parse_tbox("ci: A <= B\nci: B <= C")
    assert entails(t, CI(Name("A"), Name("C")))


def test_everything_is_subsumed_by_top(rng):
    for _ in range(50):
        t = random_tbox(rng, ["A", "B"], ["r"])
        c = random_concept(rng, ["A", "B"], ["r"], 2)
        assert entails(t, CI(c, TOP))


def test_cyclic_axiom_entails_nested_existential():
    t = parse_tbox("ci: A <= some(r, A)")
    assert entails(t, CI(Name("A"), nested_exists("r", 2, Name("A"))))


def test_empty_tbox_entails_no_name_inclusion_and_model_checker_agrees():
    a_in_b = CI(Name("A"), Name("B"))
    assert not entails(EMPTY_TBOX, a_in_b)
    # two-element countermodel: A = {1}, B = {}
    from ellab.interpretation import Interpretation

    counter = Interpretation(
        domain=frozenset({1, 2}),
        concept_ext={"A": frozenset({1}), "B": frozenset()},
        role_ext={},
    )
    assert satisfies(counter, EMPTY_TBOX)
    assert not satisfies(counter, a_in_b)


def test_reflexivity_and_weakening(rng):
    for _ in range(60):
        t = random_tbox(rng, ["A", "B"], ["r"])
        for a in t:
            assert entails(t, a)
        extra = random_tbox(rng, ["A", "B", "C"], ["r"])
        bigger = t.union(extra)
        q = CI(
            random_concept(rng, ["A", "B"], ["r"], 2),
            random_concept(rng, ["A", "B"], ["r"], 2),
        )
        if entails(t, q):
            assert entails(bigger, q)


def test_ri_closure_matches_digraph_reachability(rng):
    roles = ["r", "s", "t"]
    for _ in range(100):
        ris = [
            RI(rng.choice(roles), rng.choice(roles))
            for _ in range(rng.randint(0, 4))
        ]
        t = TBox(ris)
        edges = {(a.lhs, a.rhs) for a in t.role_inclusions}

        def reachable(start: str, goal: str) -> bool:
            seen, frontier = {start}, [start]
            while frontier:
                x = frontier.pop()
                if x == goal:
                    return True
                for a, b in edges:
                    if a == x and b not in seen:
                        seen.add(b)
                        frontier.append(b)
            return goal in seen

        for r1 in roles:
            for r2 in roles:
                assert entails(t, RI(r1, r2)) == reachable(r1, r2)


def test_role_hierarchy_lifts_existentials():
    t = parse_tbox("ci: A <= some(r, B)\nci: B <= C\nri: r <= s")
    assert entails(t, CI(Name("A"), Exists("s", Name("C"))))
    assert not entails(t, CI(Name("A"), Exists("t", Name("C"))))


def test_entails_tbox_reflexive_and_directional(rng):
    chain = parse_tbox("ci: A <= B\nci: B <= C")
    assert entails_tbox(chain, chain)
    assert entails_tbox(chain, parse_tbox("ci: A <= C"))
    assert not entails_tbox(parse_tbox("ci: A <= C"), chain)
    assert entails_tbox(EMPTY_TBOX, EMPTY_TBOX)
    for _ in range(20):
        t = random_tbox(rng, ["A", "B"], ["r"])
        assert entails_tbox(t, t)


def test_equivalent_ignores_redundant_axioms():
    t1 = parse_tbox("ci: A <= B\nci: B <= C")
    t2 = parse_tbox("ci: A <= B\nci: B <= C\nci: A <= C\nci: A <= A")
    assert equivalent(t1, t2)
    assert not equivalent(t1, parse_tbox("ci: A <= B"))


# ---------------------------------------------------------------------------
# canonical_check
# ---------------------------------------------------------------------------


def test_canonical_check_direct_axiom():
    t = parse_tbox("ci: A <= B")
    assert canonical_check(t, CI(Name("A"), Name("B")), 10)


def test_canonical_check_unravels_cycles():
    t = parse_tbox("ci: A <= some(r, A)")
    assert canonical_check(t, CI(Name("A"), nested_exists("r", 3, Name("A"))), 10)


def test_canonical_check_fuel_exhaustion_is_an_error_not_an_answer():
    t = parse_tbox("ci: A <= B\nci: B <= C\nci: C <= some(r, A & B)")
    with pytest.raises(FuelExhaustedError):
        canonical_check(t, CI(Name("A"), Name("C")), 0)


def test_default_fuel_covers_spec_floor():
    t = parse_tbox("ci: A <= some(r, A)")
    ci = CI(Name("A"), nested_exists("r", 4, Name("A")))
    from ellab.syntax import depth_of, size_of

    assert default_fuel(t, ci) >= depth_of(ci.rhs) + size_of(t)


def test_exhaustive_agreement_on_small_grid():
    """Every (TBox, CI) pair over two names, one role, depth <= 1 sides."""
    names = ["A", "B"]
    pool = [TOP, Name("A"), Name("B"), Exists("r", Name("A")), conjunction([Name("A"), Name("B")])]
    axioms = [CI(l, r) for l in pool for r in pool]
    tboxes = [EMPTY_TBOX] + [TBox([a]) for a in axioms]
    queries = [CI(l, r) for l in pool for r in pool]
    for t in tboxes:
        for q in queries:
            assert canonical_check(t, q, 60) == entails(t, q), (t, q)


def test_soundness_against_random_models(rng):
    """Entailed axioms hold in every random model of the premises."""
    names, roles = ["A", "B"], ["r"]
    pairs = []
    while len(pairs) < 25:
        t = random_tbox(rng, names, roles)
        q = CI(
            random_concept(rng, names, roles, 2),
            random_concept(rng, names, roles, 2),
        )
        if entails(t, q):
            pairs.append((t, q))
    checked = 0
    for _ in range(10_000):
        i = random_interpretation(rng, names, roles)
        t, q = pairs[checked % len(pairs)]
        if satisfies(i, t):
            assert satisfies(i, q)
        checked += 1
    assert checked == 10_000


# ---------------------------------------------------------------------------
# Instance queries
# ---------------------------------------------------------------------------


def test_iq_assertion_is_entailed():
    assert iq_entails(EMPTY_TBOX, parse_abox("A(a)"), ConceptQuery(Name("A"), "a"))


def test_iq_one_step_saturation():
    t = parse_tbox("ci: A <= B")
    assert iq_entails(t, parse_abox("A(a)"), ConceptQuery(Name("B"), "a"))
    assert not iq_entails(t, parse_abox("B(a)"), ConceptQuery(Name("A"), "a"))


def test_iq_marked_sequence_abox():
    # all sequence names asserted at one individual trigger the marker
    t = parse_tbox("ci: s1 & s2 & s3 <= M")
    abox = parse_abox("s1(a)\ns2(a)\ns3(a)")
    assert iq_entails(t, abox, ConceptQuery(Name("M"), "a"))
    partial = parse_abox("s1(a)\ns2(a)")
    assert not iq_entails(t, partial, ConceptQuery(Name("M"), "a"))


def test_iq_role_query_uses_role_hierarchy():
    t = parse_tbox("ri: r <= s")
    abox = parse_abox("r(a, b)")
    assert iq_entails(t, abox, RoleQuery("s", "a", "b"))
    assert not iq_entails(t, abox, RoleQuery("t", "a", "b"))


def test_iq_existential_query_over_abox_structure():
    t = parse_tbox("ci: A <= some(r, B)")
    abox = parse_abox("A(a)")
    assert iq_entails(t, abox, ConceptQuery(Exists("r", Name("B")), "a"))
    # but no named individual is forced to be the witness
    assert not iq_entails(t, abox, RoleQuery("r", "a", "a"))


def test_iq_agreement_with_entailment_on_concept_aboxes(rng):
    """(T, canonical ABox of C) |= D(root) iff T |= C <= D, for flat C."""
    from ellab.frameworks import axiom_to_data_example

    names, roles = ["A", "B"], ["r"]
    for _ in range(150):
        t = random_tbox(rng, names, roles)
        ci = CI(
            random_concept(rng, names, roles, 2),
            random_concept(rng, names, roles, 2),
        )
        data = axiom_to_data_example(ci)
        assert iq_entails(t, data.abox, data.query) == entails(t, ci)


def test_role_closure_is_reflexive():
    assert "r" in role_closure(EMPTY_TBOX).get("r", frozenset(("r",)))
    t = parse_tbox("ri: r <= s")
    assert role_closure(t)["r"] == frozenset({"r", "s"})
