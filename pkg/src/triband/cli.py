"""Command-line entry point for running sweeps and checks.

Examples:

    triband --sweep flows --seed 1,2,3 --out results.csv
    triband --config run.ini --scheme triple,mqis --validate
    triband --tiny-oracle 50
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .config import load_config, parse_int_list, parse_str_list
from .experiments import (SWEEP_AXES, ExperimentConfig, SweepSpec, run_sweep,
                          single_point_spec, write_csv)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triband",
        description="Triple-band wireless backhaul scheduling simulator")
    parser.add_argument("--config", metavar="PATH",
                        help="INI config file (defaults are Table-style "
                             "simulation parameters)")
    parser.add_argument("--sweep", choices=sorted(SWEEP_AXES),
                        help="sweep one parameter over its default values")
    parser.add_argument("--scheme", metavar="NAME[,NAME...]",
                        help="comma-separated schemes "
                             "(triple, single, dual, mqis)")
    parser.add_argument("--seed", metavar="N[,N...]",
                        help="comma-separated RNG seeds")
    parser.add_argument("--out", metavar="PATH",
                        help="CSV output path (default: stdout)")
    parser.add_argument("--validate", action="store_true",
                        help="run the feasibility validator on every "
                             "schedule matrix")
    parser.add_argument("--tiny-oracle", metavar="N", type=int,
                        help="compare the heuristic against the exhaustive "
                             "optimum on N tiny instances and exit")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    cfg = ExperimentConfig()
    if args.config:
        cfg = load_config(args.config, cfg)
    if args.scheme:
        cfg = replace(cfg, schemes=parse_str_list(args.scheme))
    if args.seed:
        cfg = replace(cfg, seeds=parse_int_list(args.seed))

    if args.tiny_oracle is not None:
        return _tiny_oracle(args.tiny_oracle)

    if args.sweep:
        spec = SweepSpec(base=cfg, param=args.sweep,
                         values=SWEEP_AXES[args.sweep],
                         schemes=cfg.schemes, seeds=cfg.seeds)
    else:
        spec = single_point_spec(cfg)

    records = run_sweep(spec, validate=args.validate)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)
    return 0


def _tiny_oracle(count: int) -> int:
    """Run heuristic-vs-optimum comparisons on random tiny instances."""
    from .baselines import triple_band_schedule
    from .experiments import random_tiny_instance
    from .oracle import optimal_completed

    failures = 0
    matched = 0
    for k in range(count):
        instance = random_tiny_instance(seed=k + 1)
        optimum, _ = optimal_completed(instance)
        _, outcomes = triple_band_schedule(instance.scenario)
        heuristic = sum(1 for o in outcomes if o.completed)
        status = "ok" if heuristic <= optimum else "VIOLATION"
        if heuristic > optimum:
            failures += 1
        if heuristic == optimum:
            matched += 1
        print(f"instance {k + 1}: heuristic={heuristic} optimum={optimum} "
              f"[{status}]")
    print(f"{count - failures}/{count} admissible, "
          f"{matched}/{count} optimal")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
