#!/usr/bin/env python3
"""Reproduce the small-instance benchmark grid.

Runs all six algorithms on every instance present in data/ (fetch them
first with scripts/fetch_instances.py), 10 runs each under the standard
budget rule, and prints the Best/Avg table. Known optima are passed as
early-stop targets, mirroring the protocol of stopping a run once an
optimal solution is found.

Usage: python scripts/run_benchmarks.py [--runs N] [--budget S]
       [--seed N] [--workers N] [--out records.jsonl]
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from tss.bench import (
    ALGORITHMS,
    ExperimentPlan,
    InstanceSpec,
    run_experiment,
    summarize,
    summary_csv,
    summary_table,
)

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# Best known values for the small instances; used for early stopping.
KNOWN_BEST = {"karate": 3, "dolphins": 6, "football": 22, "jazz": 20}


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--runs", type=int, default=10)
    ap.add_argument("--budget", type=float, default=None,
                    help="seconds per run (default: max(100, |V|/100))")
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default="records.jsonl")
    args = ap.parse_args(argv)

    instances = []
    for name in ("karate", "dolphins", "football", "jazz"):
        path = DATA_DIR / f"{name}.txt"
        if path.exists():
            instances.append(InstanceSpec(path=str(path), target=KNOWN_BEST.get(name)))
        else:
            print(f"skipping {name}: {path} missing (run scripts/fetch_instances.py)")
    if not instances:
        print("no instances found")
        return 1

    plan = ExperimentPlan(
        instances=tuple(instances),
        algorithms=ALGORITHMS,
        runs=args.runs,
        budget=args.budget,
        seed=args.seed,
    )
    records = run_experiment(plan, out_path=args.out, workers=args.workers)
    rows = summarize(records)
    Path(args.out).with_suffix(".summary.csv").write_text(summary_csv(rows), encoding="utf-8")
    print(summary_table(rows))
    print(f"records: {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
