"""Command-line interface.

    ggibandit simulate --config cfg.json --out results/ [--seed S] [--reps R] [--threads N]
    ggibandit ggi --weights geometric --vector 0.3,0.9,0.1
    ggibandit solve-optimal --means means.csv --weights gini

The config file is JSON with the ExperimentConfig field names; --seed,
--reps and --threads override the corresponding config entries.  The means
CSV is D rows by K columns with no header.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .ggi import GgiWeights, geometric_weights, gini_weights, ggi_value
from .harness import ExperimentConfig, run_experiment, write_results
from .programs import optimal_mixed_policy


def _weights_for(spec: str, D: int) -> GgiWeights:
    if spec == "geometric":
        return geometric_weights(D)
    if spec == "gini":
        return gini_weights(D)
    w = GgiWeights(np.array([float(v) for v in spec.split(",")]))
    if w.dim != D:
        raise ValueError(f"weights have length {w.dim} but the data has dimension {D}")
    return w


def _parse_vector(text: str) -> np.ndarray:
    return np.array([float(v) for v in text.split(",")])


def cmd_simulate(args) -> int:
    with open(args.config) as f:
        raw = json.load(f)
    if args.seed is not None:
        raw["master_seed"] = args.seed
    if args.reps is not None:
        raw["reps"] = args.reps
    if args.threads is not None:
        raw["threads"] = args.threads
    cfg = ExperimentConfig.from_dict(raw)
    res = run_experiment(cfg)
    csv_path = write_results(res, args.out)
    print(f"wrote {csv_path}")
    return 0


def cmd_ggi(args) -> int:
    x = _parse_vector(args.vector)
    w = _weights_for(args.weights, x.size)
    print(f"{ggi_value(w, x):.12g}")
    return 0


def cmd_solve_optimal(args) -> int:
    mu = np.loadtxt(args.means, delimiter=",", ndmin=2)
    w = _weights_for(args.weights, mu.shape[0])
    res = optimal_mixed_policy(w, mu)
    alpha = ",".join(f"{v:.12g}" for v in res.alpha_star)
    print(f"alpha_star: {alpha}")
    print(f"ggi_star: {res.ggi_star:.12g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ggibandit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a configured experiment and write CSV results")
    sim.add_argument("--config", required=True, help="JSON experiment config")
    sim.add_argument("--out", required=True, help="output directory")
    sim.add_argument("--seed", type=int, default=None, help="override master_seed")
    sim.add_argument("--reps", type=int, default=None, help="override repetition count")
    sim.add_argument("--threads", type=int, default=None, help="override thread count")
    sim.set_defaults(func=cmd_simulate)

    gg = sub.add_parser("ggi", help="print the GGI value of a cost vector")
    gg.add_argument("--weights", required=True, help="geometric | gini | comma-separated list")
    gg.add_argument("--vector", required=True, help="comma-separated cost vector")
    gg.set_defaults(func=cmd_ggi)

    so = sub.add_parser("solve-optimal", help="optimal mixed policy for a means matrix")
    so.add_argument("--means", required=True, help="CSV of arm means, D rows x K columns, no header")
    so.add_argument("--weights", required=True, help="geometric | gini | comma-separated list")
    so.set_defaults(func=cmd_solve_optimal)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
