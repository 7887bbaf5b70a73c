"""Experiment orchestration: sessions, transcripts, metrics and targets.

A run wires a learner to a teacher through a recording session that logs the
query/answer protocol, enforces the query cap, and keeps the accounting the
learnability definitions are stated in (query counts and the running maximum
counterexample size).  Runs are reproducible: the transcript JSON is a pure
function of (config, seed).
"""

from __future__ import annotations

import json
import logging
import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import reasoner
from .frameworks import (
    AxiomExample,
    Example,
    enumerate_examples,
    example_to_str,
    framework,
    size_of_example,
)
from .learners import (
    CapExhaustedError,
    EnumerationExhaustedError,
    EQ_LEARNERS,
    LEARNER_FRAMEWORKS,
    LEARNERS,
    LearnerCaps,
    PacParams,
    pac_wrap,
)
from .oracles import (
    Answer,
    Counterexample,
    No,
    Sample,
    Teacher,
    TeacherConfig,
    Uniform,
    Yes,
)
from .parser import parse_tbox
from .syntax import (
    Axiom,
    CI,
    Exists,
    Name,
    RI,
    Signature,
    TBox,
    canonicalize_axiom,
    conjunction,
    print_tbox,
    signature_of,
    size_of,
)

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    """Ill-formed or inconsistent experiment configuration."""


class InfeasibleSpecError(ValueError):
    """A target generator spec that no TBox satisfies."""


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass
class GeneratorSpec:
    fragment: str
    concept_count: int = 3
    role_count: int = 0
    axiom_count: int = 2
    depth_cap: int = 2
    seed: int = 0

    def to_dict(self) -> dict:
        return {
            "fragment": self.fragment,
            "conceptCount": self.concept_count,
            "roleCount": self.role_count,
            "axiomCount": self.axiom_count,
            "depthCap": self.depth_cap,
            "seed": self.seed,
        }


@dataclass
class ExperimentConfig:
    framework_id: str
    learner_id: str
    seed: int = 0
    target_path: str | None = None
    target_text: str | None = None
    generator: GeneratorSpec | None = None
    eq_strategy: str = "first-smallest"
    epsilon: float | None = None
    delta: float | None = None
    caps: LearnerCaps = field(default_factory=LearnerCaps)
    out_dir: str | None = None

    def to_dict(self) -> dict:
        return {
            "framework": self.framework_id,
            "learner": self.learner_id,
            "seed": self.seed,
            "targetPath": self.target_path,
            "targetText": self.target_text,
            "generator": self.generator.to_dict() if self.generator else None,
            "eqStrategy": self.eq_strategy,
            "epsilon": self.epsilon,
            "delta": self.delta,
            "caps": {
                "maxQueries": self.caps.max_queries,
                "maxSize": self.caps.max_size,
                "depthCap": self.caps.depth_cap,
            },
        }


# ---------------------------------------------------------------------------
# Transcripts and metrics
# ---------------------------------------------------------------------------


@dataclass
class Event:
    step: int
    type: str  # QueryPosed | AnswerGiven | HypothesisSnapshot | Halted
    payload: dict

    def to_dict(self) -> dict:
        return {"step": self.step, "type": self.type, "payload": self.payload}


class Transcript:
    """Ordered event log; queries and answers must strictly alternate."""

    def __init__(self, config: dict):
        self.config = config
        self.events: list[Event] = []
        self._pending_query = False

    def append(self, type_: str, payload: dict) -> Event:
        if type_ == "QueryPosed":
            if self._pending_query:
                raise AssertionError("two queries posed without an answer between")
            self._pending_query = True
        elif type_ == "AnswerGiven":
            if not self._pending_query:
                raise AssertionError("answer recorded with no pending query")
            self._pending_query = False
        event = Event(len(self.events), type_, payload)
        self.events.append(event)
        return event

    def to_dict(self, metrics: "Metrics | None" = None) -> dict:
        return {
            "config": self.config,
            "events": [e.to_dict() for e in self.events],
            "metrics": metrics.to_dict() if metrics else None,
        }


@dataclass
class Metrics:
    mq_count: int = 0
    eq_count: int = 0
    sq_count: int = 0
    max_counterexample_series: list[int] = field(default_factory=list)
    wall_time: float = 0.0
    success: bool | None = None
    hypothesis_size: int = 0

    def to_dict(self, include_wall_time: bool = False) -> dict:
        # wall time is excluded from transcripts so reruns are byte-identical
        out = {
            "mqCount": self.mq_count,
            "eqCount": self.eq_count,
            "sqCount": self.sq_count,
            "maxCounterexampleSoFar": list(self.max_counterexample_series),
            "success": self.success,
            "hypothesisSize": self.hypothesis_size,
        }
        if include_wall_time:
            out["wallTime"] = self.wall_time
        return out


def _answer_payload(answer: Answer) -> dict:
    if isinstance(answer, Yes):
        return {"answer": "yes"}
    if isinstance(answer, No):
        return {"answer": "no"}
    if isinstance(answer, Counterexample):
        return {"counterexample": example_to_str(answer.example)}
    if isinstance(answer, Sample):
        return {
            "sample": {
                "example": example_to_str(answer.labeled.example),
                "label": answer.labeled.label,
            }
        }
    raise TypeError(f"not an answer: {answer!r}")


class RecordingSession:
    """Teacher proxy that logs the protocol and enforces the query cap."""

    def __init__(self, teacher, transcript: Transcript, caps: LearnerCaps):
        self._teacher = teacher
        self.transcript = transcript
        self.metrics = Metrics()
        self._caps = caps
        self._max_ce = 0

    @property
    def total_queries(self) -> int:
        m = self.metrics
        return m.mq_count + m.eq_count + m.sq_count

    def _charge(self) -> None:
        if self.total_queries >= self._caps.max_queries:
            raise CapExhaustedError(
                f"query cap {self._caps.max_queries} exhausted"
            )

    def _record_answer(self, answer: Answer) -> Answer:
        if isinstance(answer, Counterexample):
            self._max_ce = max(self._max_ce, size_of_example(answer.example))
        self.transcript.append("AnswerGiven", _answer_payload(answer))
        self.metrics.max_counterexample_series.append(self._max_ce)
        return answer

    def _record_query(self, kind: str, payload: str) -> None:
        self.transcript.append("QueryPosed", {"kind": kind, "payload": payload})
        self.metrics.max_counterexample_series.append(self._max_ce)

    def answer_mq(self, e: Example) -> Answer:
        self._charge()
        self.metrics.mq_count += 1
        self._record_query("mq", example_to_str(e))
        return self._record_answer(self._teacher.answer_mq(e))

    def answer_eq(self, h: TBox) -> Answer:
        self._charge()
        self.metrics.eq_count += 1
        self.snapshot(h)
        self._record_query("eq", print_tbox(h))
        return self._record_answer(self._teacher.answer_eq(h))

    def answer_sq(self) -> Answer:
        self._charge()
        self.metrics.sq_count += 1
        self._record_query("sq", "")
        return self._record_answer(self._teacher.answer_sq())

    def snapshot(self, h: TBox) -> None:
        self.transcript.append("HypothesisSnapshot", {"tbox": print_tbox(h)})
        self.metrics.max_counterexample_series.append(self._max_ce)

    def halt(self, outcome: str, hypothesis: TBox | None) -> None:
        self.transcript.append(
            "Halted",
            {
                "outcome": outcome,
                "hypothesis": print_tbox(hypothesis) if hypothesis is not None else None,
            },
        )
        self.metrics.max_counterexample_series.append(self._max_ce)

    @property
    def max_counterexample(self) -> int:
        return self._max_ce


# ---------------------------------------------------------------------------
# Target generation
# ---------------------------------------------------------------------------


def _generator_signature(spec: GeneratorSpec) -> Signature:
    return Signature.of(
        [f"A{i + 1}" for i in range(spec.concept_count)],
        [f"r{i + 1}" for i in range(spec.role_count)],
    )


def _random_concept(rng: random.Random, sig: Signature, depth: int):
    names = sorted(sig.concept_names)
    roles = sorted(sig.role_names)
    choices = ["name"]
    if depth > 0:  # both recursive forms consume depth, so recursion is bounded
        if roles:
            choices.append("exists")
        if len(names) >= 2:
            choices.append("conj")
    kind = rng.choice(choices)
    if kind == "name":
        return Name(rng.choice(names))
    if kind == "exists":
        return Exists(rng.choice(roles), _random_concept(rng, sig, depth - 1))
    parts = [_random_concept(rng, sig, depth - 1) for _ in range(2)]
    return conjunction(parts)


def generate_target(spec: GeneratorSpec) -> TBox:
    """Random admitted TBox, deterministic per seed; no duplicate axioms."""
    fw = framework(spec.fragment)
    sig = _generator_signature(spec)
    rng = random.Random(spec.seed)
    names = sorted(sig.concept_names)
    roles = sorted(sig.role_names)

    if spec.fragment in ("toy-atomic", "dllite"):
        space = [
            e.axiom
            for e in enumerate_examples(fw, sig)
            if isinstance(e, AxiomExample) and not reasoner.entails(TBox(), e.axiom)
        ]
        if spec.axiom_count > len(space):
            raise InfeasibleSpecError(
                f"{spec.axiom_count} axioms requested, space has {len(space)}"
            )
        return TBox(rng.sample(space, spec.axiom_count))

    axioms: set[Axiom] = set()
    attempts = 0
    while len(axioms) < spec.axiom_count:
        attempts += 1
        if attempts > 200 * (spec.axiom_count + 1):
            raise InfeasibleSpecError(
                f"could not draw {spec.axiom_count} distinct axioms for {spec.fragment}"
            )
        if spec.fragment == "toy-conj":
            k = rng.randint(1, max(1, min(4, len(names))))
            antecedent = rng.sample(names, k)
            consequent = rng.choice(names)
            axiom: Axiom = CI(
                conjunction([Name(n) for n in sorted(antecedent)]), Name(consequent)
            )
        elif spec.fragment in ("elh", "elh-iq"):
            if roles and rng.random() < 0.15:
                axiom = RI(rng.choice(roles), rng.choice(roles))
            else:
                lhs = _random_concept(rng, sig, spec.depth_cap)
                rhs = _random_concept(rng, sig, spec.depth_cap)
                axiom = CI(lhs, rhs)
        else:
            raise ConfigError(f"no generator for fragment {spec.fragment!r}")
        axiom = canonicalize_axiom(axiom)
        if reasoner.entails(TBox(), axiom):  # skip tautologies
            continue
        axioms.add(axiom)
    return TBox(axioms)


# ---------------------------------------------------------------------------
# Experiment runner
# ---------------------------------------------------------------------------


@dataclass
class ExperimentResult:
    hypothesis: TBox | None
    metrics: Metrics
    transcript: Transcript
    target: TBox

    def transcript_json(self) -> str:
        return json.dumps(
            self.transcript.to_dict(self.metrics),
            sort_keys=True,
            separators=(",", ":"),
        )

    def metrics_csv_row(self) -> str:
        m = self.metrics
        return (
            f"{m.mq_count},{m.eq_count},{m.sq_count},"
            f"{m.success},{m.hypothesis_size},{m.wall_time:.6f}"
        )


METRICS_CSV_HEADER = "mqCount,eqCount,sqCount,success,hypothesisSize,wallTime"

#: Learners with a documented polynomial step bound; monitored, not enforced.
_POLYNOMIAL_LEARNERS = frozenset({"toy-mq", "horn-mqeq", "dllite-mq", "dllite-eq"})


def _poly_budget(target_size: int, max_ce: int) -> int:
    return 64 * (target_size + max_ce + 2) ** 3


def parse_learner_id(learner_id: str) -> tuple[str, str | None]:
    """Split ``pac(inner)`` into (inner, "pac"); plain ids pass through."""
    if learner_id.startswith("pac(") and learner_id.endswith(")"):
        return learner_id[4:-1], "pac"
    return learner_id, None


def resolve_target(cfg: ExperimentConfig) -> TBox:
    sources = [
        cfg.target_path is not None,
        cfg.target_text is not None,
        cfg.generator is not None,
    ]
    if sum(sources) != 1:
        raise ConfigError("exactly one of target path, text or generator is required")
    if cfg.target_path is not None:
        path = Path(cfg.target_path)
        if not path.exists():
            raise ConfigError(f"target file not found: {path}")
        return parse_tbox(path.read_text())
    if cfg.target_text is not None:
        return parse_tbox(cfg.target_text)
    assert cfg.generator is not None
    return generate_target(cfg.generator)


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """Run one learner/teacher session and verify the outcome post hoc."""
    fw = framework(cfg.framework_id)
    inner_id, wrapper = parse_learner_id(cfg.learner_id)
    if inner_id not in LEARNERS:
        raise ConfigError(f"unknown learner: {cfg.learner_id!r}")
    if LEARNER_FRAMEWORKS[inner_id] != cfg.framework_id:
        raise ConfigError(
            f"learner {inner_id!r} runs in framework "
            f"{LEARNER_FRAMEWORKS[inner_id]!r}, not {cfg.framework_id!r}"
        )
    if wrapper == "pac":
        if inner_id not in EQ_LEARNERS:
            raise ConfigError(f"{inner_id!r} poses no equivalence queries to convert")
        if cfg.epsilon is None or cfg.delta is None:
            raise ConfigError("pac learners need epsilon and delta")

    target = resolve_target(cfg)
    fw.require_hypothesis(target)
    sig = signature_of(target)
    teacher = Teacher(
        TeacherConfig(
            target=target,
            framework=fw,
            eq_strategy=cfg.eq_strategy,
            distribution=Uniform(cfg.caps.depth_cap, cfg.caps.max_size),
            seed=cfg.seed,
            signature=sig,
        )
    )
    transcript = Transcript(cfg.to_dict())
    session = RecordingSession(teacher, transcript, cfg.caps)
    learner = LEARNERS[inner_id]

    started = time.perf_counter()
    hypothesis: TBox | None = None
    outcome = "halted"
    try:
        if wrapper == "pac":
            params = PacParams(cfg.epsilon, cfg.delta)
            kwargs = {"max_size": cfg.caps.max_size} if inner_id == "elh-enum-eq" else {}
            hypothesis = pac_wrap(learner, session, sig, fw, params, **kwargs)
        elif inner_id == "elh-enum-eq":
            hypothesis = learner(session, sig, max_size=cfg.caps.max_size)
        else:
            hypothesis = learner(session, sig)
    except CapExhaustedError:
        outcome = "cap-exhausted"
    except EnumerationExhaustedError:
        outcome = "max-size-exhausted"
    metrics = session.metrics
    metrics.wall_time = time.perf_counter() - started

    if hypothesis is not None:
        metrics.success = reasoner.equivalent(hypothesis, target)
        metrics.hypothesis_size = size_of(hypothesis)
        session.snapshot(hypothesis)
    else:
        metrics.success = False
    session.halt(outcome, hypothesis)

    if inner_id in _POLYNOMIAL_LEARNERS and wrapper is None:
        budget = _poly_budget(size_of(target), session.max_counterexample)
        if len(transcript.events) > budget:
            log.warning(
                "step count %d exceeds the documented polynomial budget %d "
                "for learner %s", len(transcript.events), budget, inner_id,
            )

    result = ExperimentResult(hypothesis, metrics, transcript, target)
    if cfg.out_dir is not None:
        _write_outputs(cfg, result)
    return result


def _write_outputs(cfg: ExperimentConfig, result: ExperimentResult) -> None:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "transcript.json").write_text(result.transcript_json() + "\n")
    (out / "metrics.csv").write_text(
        METRICS_CSV_HEADER + "\n" + result.metrics_csv_row() + "\n"
    )
    if result.hypothesis is not None:
        (out / "hypothesis.tbox").write_text(print_tbox(result.hypothesis))
