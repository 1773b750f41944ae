"""Command-line front end.

Four subcommands: ``solve`` runs one algorithm on one instance,
``bench`` executes an experiment grid and prints the Best/Avg table,
``stats`` compares algorithms from a records file with Mann-Whitney U
tests, and ``verify`` re-checks that a solution file activates the
whole graph.

Exit codes: 0 success, 1 for I/O or data errors (and for a failed
verification), 2 for argument errors. Solution files list original
vertex ids, one per line.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import brkga
from .bench import (
    brkga_config,
    ALGORITHMS,
    ExperimentPlan,
    InstanceSpec,
    default_budget,
    mann_whitney_u,
    read_plan,
    read_records,
    run_experiment,
    solve_instance,
    summarize,
    summary_csv,
    summary_table,
)
from .brkga import StaticParams
from .diffusion import state_from_set
from .graph import Graph, ParseError, Thresholds, load_graph, majority_thresholds, thresholds_from_file

STATIC_ALGORITHMS = ("brkga", "brkga-rev")


def _load_problem(graph_path: str, thresholds_spec: str) -> tuple[Graph, Thresholds]:
    g = load_graph(graph_path)
    if thresholds_spec == "majority":
        th = majority_thresholds(g)
    else:
        with open(thresholds_spec, encoding="utf-8") as fh:
            th = thresholds_from_file(g, fh)
    return g, th


def _parse_params(parser: argparse.ArgumentParser, text: str) -> StaticParams:
    parts = text.split(",")
    if len(parts) != 3:
        parser.error(f"--params needs pe,pm,pbias, got {text!r}")
    try:
        pe, pm, pbias = (float(p) for p in parts)
        return StaticParams(elite_fraction=pe, mutant_fraction=pm, bias=pbias)
    except ValueError as exc:
        parser.error(f"bad --params: {exc}")
    raise AssertionError  # parser.error raises SystemExit


def cmd_solve(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    if args.params is not None and args.algo not in STATIC_ALGORITHMS:
        parser.error(f"--params applies to static modes {STATIC_ALGORITHMS}, not {args.algo!r}")
    params = _parse_params(parser, args.params) if args.params is not None else None
    if args.budget is not None and args.budget <= 0:
        parser.error(f"--budget must be positive, got {args.budget}")

    g, th = _load_problem(args.graph, args.thresholds)
    budget = args.budget if args.budget is not None else default_budget(g.vertex_count)

    if params is not None:
        config = replace(brkga_config(args.algo, budget, args.target_fitness), params=params)
        result = brkga.run(g, th, config, args.seed)
    else:
        result = solve_instance(args.algo, g, th, budget, args.seed, args.target_fitness)

    print(f"fitness {result.best_fitness}")
    print(f"time {result.wall_time:.3f}s")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for v in g.to_original(result.best_set):
                fh.write(f"{v}\n")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for point in result.trace:
                fh.write(f"{point.elapsed:.6f} {point.best_fitness}\n")
    return 0


def cmd_bench(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    if args.plan:
        plan = read_plan(args.plan)
        if args.seed is not None:
            plan = replace(plan, seed=args.seed)
    else:
        if not args.instances:
            parser.error("need --plan or --instances")
        try:
            plan = ExperimentPlan(
                instances=tuple(InstanceSpec(path=p) for p in args.instances),
                algorithms=tuple(args.algos.split(",")),
                runs=args.runs,
                budget=args.budget,
                seed=args.seed if args.seed is not None else 0,
            )
        except ValueError as exc:
            parser.error(str(exc))

    records = run_experiment(plan, out_path=args.out, workers=args.workers)
    rows = summarize(records)
    summary_path = Path(args.out).with_suffix(".summary.csv")
    summary_path.write_text(summary_csv(rows), encoding="utf-8")
    sys.stdout.write(summary_table(rows))
    return 0


def cmd_stats(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    records = read_records(args.records)
    present = {r.algorithm for r in records}
    against = args.against.split(",")
    for algo in [args.baseline, *against]:
        if algo not in present:
            parser.error(f"algorithm {algo!r} not present in {args.records}")

    by_cell: dict[tuple[str, str], list[int]] = {}
    for r in records:
        by_cell.setdefault((r.instance, r.algorithm), []).append(r.best_fitness)

    instances = sorted({r.instance for r in records})
    print(f"{'instance':<20} {'baseline':<10} {'against':<10} {'p-value':<10}")
    for instance in instances:
        base = by_cell.get((instance, args.baseline))
        if base is None:
            continue
        for algo in against:
            sample = by_cell.get((instance, algo))
            if sample is None:
                continue
            p = mann_whitney_u(base, sample)
            flag = " *" if p <= args.alpha else ""
            print(f"{instance:<20} {args.baseline:<10} {algo:<10} {p:<10.4g}{flag}")
    return 0


def cmd_verify(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    g, th = _load_problem(args.graph, args.thresholds)
    with open(args.set, encoding="utf-8") as fh:
        originals = [int(line.strip()) for line in fh if line.strip() and not line.startswith("#")]
    seeds = np.asarray([g.internal_id(v) for v in originals], dtype=np.int64)
    state = state_from_set(g, th, seeds)
    n = g.vertex_count
    if state.covers_all:
        print(f"valid: {len(seeds)} seeds activate all {n} vertices")
        return 0
    print(f"invalid: {state.n_active} of {n} vertices activated")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tss", description="Target set selection solver")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve one instance with one algorithm")
    solve.add_argument("--graph", required=True, help="edge-list file (optionally gzipped)")
    solve.add_argument("--algo", required=True, choices=ALGORITHMS)
    solve.add_argument("--budget", type=float, default=None,
                       help="wall budget in seconds (default: max(100, |V|/100))")
    solve.add_argument("--seed", type=int, default=0)
    solve.add_argument("--thresholds", default="majority",
                       help="'majority' or a threshold file ('id value' lines)")
    solve.add_argument("--out", default=None, help="write the target set here, one id per line")
    solve.add_argument("--trace", default=None, help="write 'elapsed fitness' trace pairs here")
    solve.add_argument("--params", default=None, metavar="PE,PM,PBIAS",
                       help="static control parameters (brkga/brkga-rev only)")
    solve.add_argument("--target-fitness", type=int, default=None,
                       help="stop early once this fitness is reached")

    bench = sub.add_parser("bench", help="run an experiment grid")
    bench.add_argument("--plan", default=None, help="JSON plan file")
    bench.add_argument("--instances", nargs="+", default=None, help="edge-list files (inline plan)")
    bench.add_argument("--algos", default=",".join(ALGORITHMS),
                       help="comma-separated algorithm list (inline plan)")
    bench.add_argument("--runs", type=int, default=10)
    bench.add_argument("--budget", type=float, default=None)
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--workers", type=int,
                       default=int(os.environ.get("TSS_WORKERS", "1")))
    bench.add_argument("--out", default="records.jsonl", help="records file (JSON Lines)")

    stats = sub.add_parser("stats", help="Mann-Whitney U comparisons from a records file")
    stats.add_argument("--records", required=True)
    stats.add_argument("--baseline", required=True)
    stats.add_argument("--against", required=True, help="comma-separated algorithm list")
    stats.add_argument("--alpha", type=float, default=0.05)

    verify = sub.add_parser("verify", help="check that a solution file covers the graph")
    verify.add_argument("--graph", required=True)
    verify.add_argument("--set", required=True, help="solution file, one original id per line")
    verify.add_argument("--thresholds", default="majority")

    return parser


COMMANDS = {
    "solve": cmd_solve,
    "bench": cmd_bench,
    "stats": cmd_stats,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](parser, args)
    except (OSError, ParseError, RuntimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
