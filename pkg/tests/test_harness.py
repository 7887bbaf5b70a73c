"""Experiment orchestration: accounting, reproducibility, target generation."""

import json

import pytest

from ellab.harness import (
    ConfigError,
    ExperimentConfig,
    GeneratorSpec,
    InfeasibleSpecError,
    generate_target,
    run_experiment,
)
from ellab.frameworks import framework, is_member
from ellab.learners import LearnerCaps
from ellab.parser import parse_axiom_line, parse_tbox
from ellab.reasoner import entails_tbox, equivalent


def run(framework_id, learner_id, target_text, **kwargs):
    return run_experiment(
        ExperimentConfig(
            framework_id=framework_id,
            learner_id=learner_id,
            target_text=target_text,
            **kwargs,
        )
    )


# ---------------------------------------------------------------------------
# run_experiment
# ---------------------------------------------------------------------------


def test_toy_run_hits_the_query_budget_exactly():
    result = run("toy-atomic", "toy-mq", "ci: A <= B\nci: B <= C", seed=0)
    assert result.metrics.success
    assert result.metrics.mq_count == 9
    assert result.hypothesis == parse_tbox("ci: A <= B\nci: A <= C\nci: B <= C")


def test_dllite_eq_on_empty_target_uses_one_eq():
    result = run("dllite", "dllite-eq", "", seed=0)
    assert result.metrics.success
    assert result.metrics.eq_count == 1


def test_success_is_verified_mutual_entailment():
    result = run("toy-conj", "horn-mqeq", "ci: A & B <= C", seed=4)
    assert result.metrics.success
    assert entails_tbox(result.hypothesis, result.target)
    assert entails_tbox(result.target, result.hypothesis)


def test_transcripts_alternate_queries_and_answers():
    result = run("dllite", "dllite-eq", "ci: A <= B\nci: B <= C", seed=0)
    kinds = [e.type for e in result.transcript.events]
    protocol = [k for k in kinds if k in ("QueryPosed", "AnswerGiven")]
    assert protocol == ["QueryPosed", "AnswerGiven"] * (len(protocol) // 2)
    assert kinds[-1] == "Halted"


def test_metrics_counts_match_transcript_tallies():
    result = run("toy-conj", "horn-mqeq", "ci: A & B <= C\nci: C <= D", seed=0)
    posed = [e for e in result.transcript.events if e.type == "QueryPosed"]
    assert len(posed) == (
        result.metrics.mq_count + result.metrics.eq_count + result.metrics.sq_count
    )
    by_kind = {"mq": 0, "eq": 0, "sq": 0}
    for e in posed:
        by_kind[e.payload["kind"]] += 1
    assert by_kind["mq"] == result.metrics.mq_count
    assert by_kind["eq"] == result.metrics.eq_count


def test_max_counterexample_series_is_nondecreasing_running_max():
    result = run("dllite", "dllite-eq", "ci: A <= B\nci: some(r, top) <= B", seed=0)
    series = result.metrics.max_counterexample_series
    assert series == sorted(series)
    assert len(series) == len(result.transcript.events)
    # the largest counterexample in the transcript equals the final entry
    from ellab.frameworks import AxiomExample, size_of_example

    sizes = [
        size_of_example(AxiomExample(parse_axiom_line(e.payload["counterexample"])[0]))
        for e in result.transcript.events
        if e.type == "AnswerGiven" and "counterexample" in e.payload
    ]
    assert series[-1] == max(sizes)


def test_horn_counterexamples_are_positive_in_recorded_runs():
    result = run("toy-conj", "horn-mqeq", "ci: A & B <= C\nci: B <= D", seed=0)
    conj = framework("toy-conj")
    for e in result.transcript.events:
        if e.type == "AnswerGiven" and "counterexample" in e.payload:
            from ellab.frameworks import AxiomExample

            axiom = parse_axiom_line(e.payload["counterexample"])[0]
            assert is_member(conj, result.target, AxiomExample(axiom))


def test_cap_exhaustion_is_an_outcome_not_a_crash():
    result = run(
        "toy-atomic",
        "toy-mq",
        "ci: A <= B\nci: B <= C",
        caps=LearnerCaps(max_queries=4),
    )
    assert result.hypothesis is None
    assert not result.metrics.success
    assert result.transcript.events[-1].payload["outcome"] == "cap-exhausted"


def test_learner_framework_mismatch_is_a_config_error():
    with pytest.raises(ConfigError):
        run("toy-atomic", "dllite-mq", "ci: A <= B")
    with pytest.raises(ConfigError):
        run("dllite", "pac(dllite-eq)", "ci: A <= B")  # missing epsilon/delta
    with pytest.raises(ConfigError):
        run("toy-atomic", "pac(toy-mq)", "ci: A <= B", epsilon=0.1, delta=0.1)


def test_reproducible_transcripts_per_learner():
    cases = [
        ("toy-atomic", "toy-mq", "ci: A <= B", {}),
        ("toy-conj", "horn-mqeq", "ci: A & B <= C", {}),
        ("dllite", "dllite-mq", "ci: some(r, top) <= A", {}),
        ("dllite", "dllite-eq", "ci: A <= B", {}),
        ("elh", "elh-enum-eq", "ci: A <= B", {}),
        ("dllite", "pac(dllite-eq)", "ci: A <= B", {"epsilon": 0.1, "delta": 0.1}),
    ]
    for framework_id, learner_id, text, extra in cases:
        first = run(framework_id, learner_id, text, seed=42, **extra)
        second = run(framework_id, learner_id, text, seed=42, **extra)
        assert first.transcript_json() == second.transcript_json(), learner_id


def test_transcript_json_shape():
    result = run("toy-atomic", "toy-mq", "ci: A <= B", seed=0)
    doc = json.loads(result.transcript_json())
    assert set(doc) == {"config", "events", "metrics"}
    assert doc["config"]["learner"] == "toy-mq"
    for event in doc["events"]:
        assert set(event) == {"step", "type", "payload"}
    assert doc["events"][0]["step"] == 0
    assert [e["step"] for e in doc["events"]] == list(range(len(doc["events"])))


def test_report_files_are_written(tmp_path):
    out = tmp_path / "reports"
    run("toy-atomic", "toy-mq", "ci: A <= B", out_dir=str(out))
    assert (out / "transcript.json").exists()
    assert (out / "metrics.csv").read_text().startswith("mqCount,")
    assert (out / "hypothesis.tbox").read_text() == "ci: A <= B\n"


# ---------------------------------------------------------------------------
# Target generation
# ---------------------------------------------------------------------------


def test_generate_toy_atomic_target():
    spec = GeneratorSpec("toy-atomic", concept_count=3, axiom_count=2, seed=9)
    t = generate_target(spec)
    assert len(t) == 2
    assert framework("toy-atomic").admits_hypothesis(t)


def test_generator_is_deterministic_per_seed():
    spec = GeneratorSpec("elh", concept_count=3, role_count=1, axiom_count=3, seed=5)
    assert generate_target(spec) == generate_target(spec)
    other = GeneratorSpec("elh", concept_count=3, role_count=1, axiom_count=3, seed=6)
    assert generate_target(other) != generate_target(spec)


def test_generator_rejects_infeasible_axiom_counts():
    sig_space = (2 + 1) ** 2 + 1  # dllite closed form for 2 concepts, 1 role
    with pytest.raises(InfeasibleSpecError):
        generate_target(
            GeneratorSpec("dllite", concept_count=2, role_count=1, axiom_count=sig_space + 1)
        )


def test_generated_targets_admit_their_fragment():
    for fragment in ("toy-atomic", "toy-conj", "dllite", "elh"):
        spec = GeneratorSpec(
            fragment,
            concept_count=3,
            role_count=1 if fragment in ("dllite", "elh") else 0,
            axiom_count=2,
            seed=13,
        )
        t = generate_target(spec)
        assert framework(fragment).admits_hypothesis(t)
        assert len(t) == 2


def test_generated_targets_feed_straight_into_runs():
    cfg = ExperimentConfig(
        framework_id="dllite",
        learner_id="dllite-mq",
        generator=GeneratorSpec("dllite", concept_count=2, role_count=1, axiom_count=2, seed=3),
        seed=3,
    )
    result = run_experiment(cfg)
    assert result.metrics.success
    assert equivalent(result.hypothesis, result.target)
