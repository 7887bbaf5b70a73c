"""Behavior and budgets of the learning algorithms against truthful teachers."""

import math
import random

import pytest

from ellab.frameworks import (
    dllite_axiom_space_size,
    framework,
    is_member,
)
from ellab.learners import (
    EnumerationExhaustedError,
    PacParams,
    learn_dllite_eq,
    learn_dllite_mq,
    learn_elh_enumerate,
    learn_horn,
    learn_toy_atomic,
    pac_sample_size,
    pac_wrap,
)
from ellab.oracles import Counterexample, Teacher, TeacherConfig, Uniform
from ellab.parser import parse_tbox
from ellab.reasoner import equivalent
from ellab.syntax import (
    CI,
    EMPTY_TBOX,
    Name,
    Signature,
    TBox,
    conjunction,
    signature_of,
    size_of,
)

TOY = framework("toy-atomic")
CONJ = framework("toy-conj")
DLLITE = framework("dllite")
ELH = framework("elh")


class CountingTeacher:
    """Wraps a teacher, counting queries; keeps learners honest about budgets."""

    def __init__(self, target: TBox, fw, **kwargs):
        self.inner = Teacher(TeacherConfig(target=target, framework=fw, **kwargs))
        self.target = target
        self.framework = fw
        self.mq = self.eq = self.sq = 0
        self.eq_counterexamples = []

    def answer_mq(self, e):
        self.mq += 1
        return self.inner.answer_mq(e)

    def answer_eq(self, h):
        self.eq += 1
        answer = self.inner.answer_eq(h)
        if isinstance(answer, Counterexample):
            self.eq_counterexamples.append((h, answer.example))
        return answer

    def answer_sq(self):
        self.sq += 1
        return self.inner.answer_sq()


# ---------------------------------------------------------------------------
# toy-atomic
# ---------------------------------------------------------------------------


def test_toy_mq_worked_example():
    teacher = CountingTeacher(parse_tbox("ci: A <= B\nci: B <= C"), TOY)
    h = learn_toy_atomic(teacher, Signature.of({"A", "B", "C"}, set()))
    assert h == parse_tbox("ci: A <= B\nci: A <= C\nci: B <= C")
    assert teacher.mq == 9


def test_toy_mq_on_empty_target_returns_something_equivalent_to_empty():
    teacher = CountingTeacher(EMPTY_TBOX, TOY)
    h = learn_toy_atomic(teacher, Signature.of({"A"}, set()))
    assert equivalent(h, EMPTY_TBOX)
    assert teacher.mq == 1


def test_toy_mq_query_budget_is_signature_squared():
    teacher = CountingTeacher(parse_tbox("ci: A <= B"), TOY)
    learn_toy_atomic(teacher, Signature.of({"A", "B"}, set()))
    assert teacher.mq == 4


def test_toy_mq_identifies_random_targets(rng):
    names = ["A", "B", "C", "D"]
    sig = Signature.of(names, set())
    for _ in range(25):
        axioms = [
            CI(Name(rng.choice(names)), Name(rng.choice(names)))
            for _ in range(rng.randint(0, 4))
        ]
        target = TBox(axioms)
        teacher = CountingTeacher(target, TOY)
        h = learn_toy_atomic(teacher, sig)
        assert equivalent(h, target)


# ---------------------------------------------------------------------------
# Horn learner
# ---------------------------------------------------------------------------


def test_horn_single_conjunction_target():
    target = parse_tbox("ci: A & B <= C")
    teacher = CountingTeacher(target, CONJ)
    h = learn_horn(teacher, signature_of(target))
    assert equivalent(h, target)
    # first equivalence query is on the empty hypothesis and must fail
    first_hypothesis, first_ce = teacher.eq_counterexamples[0]
    assert first_hypothesis == EMPTY_TBOX
    assert is_member(CONJ, target, first_ce)


def test_horn_empty_target_needs_one_eq_and_no_mq():
    teacher = CountingTeacher(EMPTY_TBOX, CONJ)
    h = learn_horn(teacher, Signature.of({"A", "B"}, set()))
    assert h == EMPTY_TBOX
    assert (teacher.eq, teacher.mq) == (1, 0)


def test_horn_identifies_marked_sequence_target_cheaply():
    from ellab.hardness import build_family

    fam = build_family(3)
    target = fam.member(5)
    teacher = CountingTeacher(target, CONJ)
    h = learn_horn(teacher, fam.signature)
    assert equivalent(h, target)
    assert teacher.mq + teacher.eq <= 200


def _random_conj_target(rng: random.Random, names: list[str], axioms: int) -> TBox:
    out = set()
    for _ in range(200 * axioms):
        if len(out) >= axioms:
            break
        k = rng.randint(1, min(4, len(names)))
        antecedent = rng.sample(names, k)
        consequent = rng.choice(names)
        if consequent in antecedent:
            continue
        out.add(CI(conjunction([Name(n) for n in sorted(antecedent)]), Name(consequent)))
    return TBox(out)


def test_horn_exact_identification_on_random_targets(rng):
    for trial in range(30):
        n_names = rng.randint(2, 8)
        names = [f"P{i}" for i in range(n_names)]
        target = _random_conj_target(rng, names, rng.randint(1, min(5, n_names)))
        teacher = CountingTeacher(target, CONJ)
        h = learn_horn(teacher, Signature.of(names, set()))
        assert equivalent(h, target), f"trial {trial}: {target}"
        # every equivalence counterexample must be positive
        for _, ce in teacher.eq_counterexamples:
            assert is_member(CONJ, target, ce)
        assert teacher.mq <= 4 * len(target) ** 2 * len(names) + 4 * len(names)


# ---------------------------------------------------------------------------
# DL-Lite learners
# ---------------------------------------------------------------------------


def test_dllite_mq_collects_target_axiom_and_tautologies():
    target = parse_tbox("ci: some(r, top) <= A")
    teacher = CountingTeacher(target, DLLITE)
    h = learn_dllite_mq(teacher, signature_of(target))
    assert CI(parse_tbox("ci: some(r, top) <= A").concept_inclusions[0].lhs, Name("A")) in h
    assert equivalent(h, target)


def test_dllite_mq_on_empty_target():
    teacher = CountingTeacher(EMPTY_TBOX, DLLITE)
    h = learn_dllite_mq(teacher, Signature.of({"A"}, {"r"}))
    assert equivalent(h, EMPTY_TBOX)


def test_dllite_mq_exact_query_count():
    sig = Signature.of({"A1", "A2", "A3"}, {"r1", "r2"})
    teacher = CountingTeacher(EMPTY_TBOX, DLLITE)
    learn_dllite_mq(teacher, sig)
    assert teacher.mq == (3 + 2) ** 2 + 2**2 == 29


def test_dllite_eq_two_rounds_for_single_axiom_target():
    target = parse_tbox("ci: A <= B")
    teacher = CountingTeacher(target, DLLITE)
    h = learn_dllite_eq(teacher, signature_of(target))
    assert equivalent(h, target)
    assert teacher.eq == 2


def test_dllite_eq_immediate_yes_on_empty_target():
    teacher = CountingTeacher(EMPTY_TBOX, DLLITE)
    h = learn_dllite_eq(teacher, Signature.of({"A"}, set()))
    assert h == EMPTY_TBOX
    assert teacher.eq == 1


def test_dllite_eq_round_count_is_bounded_by_axiom_space(rng):
    sig = Signature.of({"A", "B"}, {"r"})
    space = dllite_axiom_space_size(sig)
    from ellab.harness import GeneratorSpec, generate_target

    for seed in range(20):
        target = generate_target(
            GeneratorSpec("dllite", concept_count=2, role_count=1, axiom_count=3, seed=seed)
        )
        teacher = CountingTeacher(target, DLLITE)
        h = learn_dllite_eq(teacher, sig)
        assert equivalent(h, target)
        assert teacher.eq <= space + 1


# ---------------------------------------------------------------------------
# Enumeration learner
# ---------------------------------------------------------------------------


def test_enum_finds_single_axiom_target_at_its_size():
    target = parse_tbox("ci: A <= B")
    teacher = CountingTeacher(target, ELH)
    h = learn_elh_enumerate(teacher, signature_of(target), max_size=4)
    assert equivalent(h, target)
    assert size_of(h) == size_of(target)


def test_enum_empty_target_found_first():
    teacher = CountingTeacher(EMPTY_TBOX, ELH)
    h = learn_elh_enumerate(teacher, Signature.of({"A"}, set()), max_size=3)
    assert h == EMPTY_TBOX
    assert teacher.eq == 1


def test_enum_identifies_mixed_tbox_and_query_count_grows_fast():
    target = parse_tbox("ri: r <= s\nci: A <= some(r, B)")
    teacher = CountingTeacher(target, ELH)
    h = learn_elh_enumerate(
        teacher, signature_of(target), max_size=size_of(target), depth_cap=2
    )
    assert equivalent(h, target)

    # query counts blow up with target size: measure the growth curve
    counts = []
    for text in ["ci: A <= B", "ci: A <= some(r, B)", "ri: r <= s\nci: A <= some(r, B)"]:
        t = parse_tbox(text)
        counting = CountingTeacher(t, ELH)
        learn_elh_enumerate(counting, signature_of(target), max_size=size_of(t), depth_cap=2)
        counts.append(counting.eq)
    assert counts[0] < counts[1] < counts[2]
    assert counts[2] > 10 * counts[0]


def test_enum_reports_exhaustion_instead_of_guessing():
    target = parse_tbox("ci: A <= some(r, some(r, B))")
    teacher = CountingTeacher(target, ELH)
    with pytest.raises(EnumerationExhaustedError):
        learn_elh_enumerate(teacher, signature_of(target), max_size=4)


def test_exact_learners_identify_100_random_targets_per_fragment():
    """Correctness at termination, property-tested across all four fragments."""
    from ellab.harness import GeneratorSpec, generate_target

    toy_sig = Signature.of({"A1", "A2", "A3", "A4"}, set())
    conj_sig = Signature.of({"A1", "A2", "A3", "A4", "A5"}, set())
    dllite_sig = Signature.of({"A1", "A2"}, {"r1"})
    elh_sig = Signature.of({"A1", "A2"}, {"r1"})
    for seed in range(100):
        cases = [
            ("toy-atomic", learn_toy_atomic, toy_sig,
             GeneratorSpec("toy-atomic", concept_count=4, axiom_count=(seed % 5) + 1, seed=seed), {}),
            ("toy-conj", learn_horn, conj_sig,
             GeneratorSpec("toy-conj", concept_count=5, axiom_count=(seed % 4) + 1, seed=seed), {}),
            ("dllite", learn_dllite_eq, dllite_sig,
             GeneratorSpec("dllite", concept_count=2, role_count=1, axiom_count=(seed % 3) + 1, seed=seed), {}),
        ]
        for fragment, learner, sig, spec, kwargs in cases:
            target = generate_target(spec)
            teacher = CountingTeacher(target, framework(fragment))
            h = learner(teacher, sig, **kwargs)
            assert equivalent(h, target), (fragment, seed)
        elh_target = generate_target(
            GeneratorSpec("elh", concept_count=2, role_count=1, axiom_count=1,
                          depth_cap=1, seed=seed)
        )
        teacher = CountingTeacher(elh_target, ELH)
        h = learn_elh_enumerate(
            teacher, elh_sig, max_size=size_of(elh_target), depth_cap=2
        )
        assert equivalent(h, elh_target), ("elh", seed)


# ---------------------------------------------------------------------------
# PAC wrapper
# ---------------------------------------------------------------------------


def test_pac_sample_schedule_matches_closed_form():
    params = PacParams(0.1, 0.1)
    # ceil((ln 10 + i ln 2) / 0.1): 30, 37, 44, ...
    assert pac_sample_size(params, 1) == math.ceil((math.log(10) + math.log(2)) / 0.1) == 30
    sizes = [pac_sample_size(params, i) for i in range(1, 8)]
    assert sizes == sorted(sizes) and len(set(sizes)) == len(sizes)


def test_pac_params_validate_open_interval():
    with pytest.raises(ValueError):
        PacParams(0.0, 0.5)
    with pytest.raises(ValueError):
        PacParams(0.5, 1.0)


def test_pac_on_empty_target_halts_after_first_batch():
    sig = Signature.of({"A", "B"}, set())
    teacher = CountingTeacher(
        EMPTY_TBOX, DLLITE, distribution=Uniform(2, 8), signature=sig, seed=3
    )
    params = PacParams(0.25, 0.25)
    h = pac_wrap(learn_dllite_eq, teacher, sig, DLLITE, params)
    assert h == EMPTY_TBOX
    assert teacher.sq == pac_sample_size(params, 1)
    assert teacher.eq == 0


def test_pac_wrapped_dllite_eq_learns_with_low_error(rng):
    from ellab.frameworks import enumerate_examples
    from ellab.harness import GeneratorSpec, generate_target

    sig = Signature.of({"A", "B"}, {"r"})
    space = list(enumerate_examples(DLLITE, sig))
    params = PacParams(0.2, 0.2)
    failures = 0
    trials = 40
    for seed in range(trials):
        target = generate_target(
            GeneratorSpec("dllite", concept_count=2, role_count=1, axiom_count=2, seed=seed)
        )
        teacher = CountingTeacher(
            target, DLLITE, distribution=Uniform(3, 9), signature=sig, seed=seed
        )
        h = pac_wrap(learn_dllite_eq, teacher, sig, DLLITE, params)
        # exact distribution mass of the symmetric difference, by summation
        wrong = sum(
            1 for e in space if is_member(DLLITE, h, e) != is_member(DLLITE, target, e)
        )
        if wrong / len(space) > params.epsilon:
            failures += 1
    assert failures / trials <= 0.25
