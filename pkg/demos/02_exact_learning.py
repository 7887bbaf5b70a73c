"""The query protocol in action: one learner per fragment.

Run with: python3 demos/02_exact_learning.py
"""

from ellab import print_tbox
from ellab.harness import ExperimentConfig, run_experiment


def show(title, cfg):
    result = run_experiment(cfg)
    m = result.metrics
    print(f"--- {title}")
    print(f"queries: {m.mq_count} MQ, {m.eq_count} EQ, {m.sq_count} SQ; "
          f"success={m.success}")
    print(print_tbox(result.hypothesis), end="")
    print()


# The name-pair fragment: one membership query per candidate inclusion,
# |signature|^2 of them, identifies any target.
show(
    "membership-only learner, name pairs",
    ExperimentConfig(
        framework_id="toy-atomic",
        learner_id="toy-mq",
        target_text="ci: A <= B\nci: B <= C",
    ),
)

# Adding conjunctions makes membership-only sweeps exponential; with
# equivalence queries the Horn learner stays polynomial.
show(
    "Horn learner (MQ + EQ), conjunction fragment",
    ExperimentConfig(
        framework_id="toy-conj",
        learner_id="horn-mqeq",
        target_text="ci: Cold & Rain <= Wet\nci: Wet <= Risk",
    ),
)

# DL-Lite's axiom space is polynomial in the signature, so either query
# type alone suffices.
show(
    "DL-Lite with membership queries only",
    ExperimentConfig(
        framework_id="dllite",
        learner_id="dllite-mq",
        target_text="ci: some(employs, top) <= Employer",
    ),
)
show(
    "DL-Lite with equivalence queries only",
    ExperimentConfig(
        framework_id="dllite",
        learner_id="dllite-eq",
        target_text="ci: some(employs, top) <= Employer\nci: Employer <= Company",
    ),
)

# Full concept grammar: enumerate TBoxes by size and ask equivalence
# queries; terminates, but the query count explodes with the target size.
show(
    "enumeration learner, full grammar",
    ExperimentConfig(
        framework_id="elh",
        learner_id="elh-enum-eq",
        target_text="ci: A <= some(r, B)",
    ),
)
