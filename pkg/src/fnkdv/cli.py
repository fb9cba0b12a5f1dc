"""Command-line experiment harness.

    fnkdv list
    fnkdv run <id> --out DIR [--jobs K]
    fnkdv run --config FILE.json --out DIR [--jobs K]
    fnkdv sweep --param delta --values 5e-3,5e-4,5e-5 --out DIR
               [--config BASE.json] [--jobs K]
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .experiments import (config_from_dict, default_sweep_base, get_experiment,
                          list_experiments, run_config_file, run_experiment,
                          sweep)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fnkdv",
        description="Experiment harness for conservation laws with fully "
                    "nonlinear concave dispersion")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="print the experiment catalog")

    p_run = sub.add_parser("run", help="run a catalog experiment or a config file")
    p_run.add_argument("experiment", nargs="?", help="catalog experiment id")
    p_run.add_argument("--config", help="JSON config file (instead of an id)")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--jobs", type=int, default=1,
                       help="concurrent runs within the experiment")

    p_sweep = sub.add_parser("sweep", help="run a one-parameter sweep")
    p_sweep.add_argument("--param", required=True,
                         choices=("delta", "n_points", "dt"))
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated positive values")
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--config", help="JSON base config (default: "
                                          "abs kind, exponential data, N=400)")
    p_sweep.add_argument("--jobs", type=int, default=1)
    return parser


def _cmd_list() -> int:
    for exp_id, spec in sorted(list_experiments().items()):
        print(f"{exp_id:26s} {len(spec.runs):2d} run(s)  {spec.description}")
    return 0


def _cmd_run(args) -> int:
    if (args.experiment is None) == (args.config is None):
        print("run: give exactly one of <experiment id> or --config FILE",
              file=sys.stderr)
        return 2
    if args.config is not None:
        bundle = run_config_file(args.config, args.out, jobs=args.jobs)
    else:
        get_experiment(args.experiment)  # fail fast on unknown ids
        bundle = run_experiment(args.experiment, args.out, jobs=args.jobs)
    print(f"wrote {bundle.path}")
    return 0


def _cmd_sweep(args) -> int:
    values = [float(v) for v in args.values.split(",") if v.strip()]
    if args.config is not None:
        base = config_from_dict(json.loads(Path(args.config).read_text()))
    else:
        base = default_sweep_base()
    bundle = sweep(base, args.param, values, args.out, jobs=args.jobs)
    print(f"wrote {bundle.path}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "list":
            return _cmd_list()
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_sweep(args)
    except Exception as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
