#!/usr/bin/env python3
"""Regenerate the committed golden bundles for every catalog experiment.

    python scripts/make_goldens.py [--out goldens] [--only ID [ID ...]]

The heavy exponential-data families take a few minutes.
"""
import argparse
import shutil
import sys
import time
from pathlib import Path

from fnkdv.experiments import list_experiments, run_experiment


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=Path(__file__).resolve().parents[1] / "goldens")
    parser.add_argument("--only", nargs="*", default=None)
    args = parser.parse_args()

    out = Path(args.out)
    ids = args.only if args.only else sorted(list_experiments())
    for exp_id in ids:
        target = out / exp_id
        if target.exists():
            shutil.rmtree(target)
        t0 = time.time()
        bundle = run_experiment(exp_id, out)
        n_csv = len(list(bundle.path.rglob("*.csv")))
        print(f"{exp_id:26s} {n_csv:3d} csv files  {time.time() - t0:7.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
