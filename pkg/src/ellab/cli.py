"""Command-line entry points: ``learn``, ``hardness`` and ``serve``."""

from __future__ import annotations

import argparse
import sys

from .harness import (
    ExperimentConfig,
    GeneratorSpec,
    METRICS_CSV_HEADER,
    run_experiment,
)
from .hardness import MAX_FAMILY_EXPONENT, run_lower_bound
from .learners import LearnerCaps
from .service import session_service
from .syntax import print_tbox

_HARDNESS_LEARNERS = ("toy-mq", "dllite-mq", "conj-mq-exhaustive")


def _parse_gen_spec(text: str, fragment: str, seed: int) -> GeneratorSpec:
    """Parse ``key=value`` pairs: sigSize, roleCount, axiomCount, depthCap."""
    spec = GeneratorSpec(fragment=fragment, seed=seed)
    if text:
        for item in text.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            try:
                number = int(value)
            except ValueError:
                raise SystemExit(f"bad generator value: {item!r}")
            if key == "sigSize":
                spec.concept_count = number
            elif key == "roleCount":
                spec.role_count = number
            elif key == "axiomCount":
                spec.axiom_count = number
            elif key == "depthCap":
                spec.depth_cap = number
            else:
                raise SystemExit(f"unknown generator key: {key!r}")
    return spec


def _cmd_learn(args: argparse.Namespace) -> int:
    caps = LearnerCaps(
        max_queries=args.max_queries,
        max_size=args.max_size,
        depth_cap=args.depth_cap,
    )
    generator = None
    if args.gen is not None:
        generator = _parse_gen_spec(args.gen, args.framework, args.seed)
    cfg = ExperimentConfig(
        framework_id=args.framework,
        learner_id=args.learner,
        seed=args.seed,
        target_path=args.target,
        generator=generator,
        eq_strategy=args.eq_strategy,
        epsilon=args.epsilon,
        delta=args.delta,
        caps=caps,
        out_dir=args.out,
    )
    result = run_experiment(cfg)
    m = result.metrics
    print(METRICS_CSV_HEADER)
    print(result.metrics_csv_row())
    if result.hypothesis is not None:
        sys.stdout.write(print_tbox(result.hypothesis))
    print(f"success={m.success} (reports in {args.out})" if args.out else f"success={m.success}")
    return 0 if m.success else 1


def _cmd_hardness(args: argparse.Namespace) -> int:
    learners = _HARDNESS_LEARNERS if args.learner == "all" else (args.learner,)
    print("n,learner,queries,remaining,outcome")
    for learner_id in learners:
        row = run_lower_bound(args.n, learner_id, args.budget)
        print(f"{row.n},{row.learner_id},{row.queries},{row.remaining},{row.outcome}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    service = session_service(args.bind, timeout=args.timeout)
    host, port = service.address
    # flush: scripted callers read the bound port from a pipe
    print(f"session service listening on http://{host}:{port}", flush=True)
    try:
        service.serve_forever()
    except KeyboardInterrupt:
        service.shutdown()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellab",
        description="Exact and PAC learning experiments for lightweight ontologies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="run one learner/teacher experiment")
    learn.add_argument("--framework", required=True,
                       choices=["toy-atomic", "toy-conj", "dllite", "elh", "elh-iq"])
    learn.add_argument("--learner", required=True,
                       help="toy-mq | horn-mqeq | dllite-mq | dllite-eq | "
                            "elh-enum-eq | pac(inner)")
    target = learn.add_mutually_exclusive_group(required=True)
    target.add_argument("--target", help="path to a TBox file")
    target.add_argument("--gen", nargs="?", const="",
                        help="generator spec, e.g. sigSize=3,axiomCount=2")
    learn.add_argument("--seed", type=int, default=0)
    learn.add_argument("--epsilon", type=float, default=None)
    learn.add_argument("--delta", type=float, default=None)
    learn.add_argument("--eq-strategy", default="first-smallest",
                       choices=["first-smallest", "random-seeded", "adversarial-largest"])
    learn.add_argument("--max-queries", type=int, default=100_000)
    learn.add_argument("--max-size", type=int, default=8)
    learn.add_argument("--depth-cap", type=int, default=3)
    learn.add_argument("--out", default=None, help="report directory")
    learn.set_defaults(func=_cmd_learn)

    hard = sub.add_parser("hardness", help="run the adversarial lower-bound experiment")
    hard.add_argument("--n", type=int, required=True,
                      help=f"family exponent (<= {MAX_FAMILY_EXPONENT})")
    hard.add_argument("--learner", default="all",
                      help="|".join(_HARDNESS_LEARNERS) + " | all")
    hard.add_argument("--budget", type=int, default=None,
                      help="membership-query budget (default 2**n)")
    hard.set_defaults(func=_cmd_hardness)

    serve = sub.add_parser("serve", help="start the interactive session service")
    serve.add_argument("--bind", default="127.0.0.1:8077", help="HOST:PORT")
    serve.add_argument("--timeout", type=float, default=None,
                       help="seconds to wait for a human answer")
    serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
