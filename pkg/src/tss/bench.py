"""Experiment grids, result persistence, summaries, and statistics.

A plan is a grid: instances x algorithms x run indices. Every cell gets
a deterministic seed derived from the base seed, runs under a wall
budget of max(100, |V|/100) seconds unless overridden, and yields one
record (algorithm id, seed, best fitness, wall time, best-so-far
trace). The two deterministic greedy algorithms execute once per
instance and replicate their record across run indices.

Records persist as JSON Lines, one object per line; summaries export as
csv or aligned text with the Best / Avg convention (Avg to one
decimal). The module also provides the two-sided Mann-Whitney U test
used to compare algorithms and a brute-force exact solver that anchors
heuristic results on tiny instances.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from statistics import mean
from typing import IO, Iterable, Sequence

import numpy as np
from scipy.stats import rankdata

from .brkga import BrkgaConfig, PowerLawParams, RunResult, StaticParams, TracePoint
from .brkga import run as brkga_run
from .diffusion import DiffusionState
from .graph import Graph, Thresholds, load_graph, majority_thresholds, thresholds_from_file
from .greedy import mdg, reverse_mdg

ALGORITHMS = ("mdg", "mdg-rev", "brkga", "brkga-rev", "fast", "fast-rev")
DETERMINISTIC_ALGORITHMS = ("mdg", "mdg-rev")
DEFAULT_RUNS = 10

# Number of subset combinations the exact Mann-Whitney path will enumerate.
EXACT_MWU_CUTOFF = 8
EXACT_MWU_MAX_COMBINATIONS = 2_000_000


def default_budget(n_vertices: int) -> float:
    """Per-run wall budget in seconds: max(100, |V| / 100)."""
    return max(100.0, n_vertices / 100.0)


@dataclass(frozen=True)
class InstanceSpec:
    """One benchmark instance: where it lives and how it is thresholded."""

    path: str
    name: str = ""
    thresholds: str = "majority"  # "majority" or a threshold file path
    target: int | None = None  # known optimum; stops stochastic runs early

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", Path(self.path).stem)


@dataclass(frozen=True)
class ExperimentPlan:
    instances: tuple[InstanceSpec, ...]
    algorithms: tuple[str, ...]
    runs: int = DEFAULT_RUNS
    budget: float | None = None  # None applies the default rule per instance
    seed: int = 0

    def __post_init__(self):
        if not self.instances:
            raise ValueError("plan has no instances")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ValueError(f"unknown algorithms: {', '.join(unknown)}")
        if self.budget is not None and self.budget <= 0:
            raise ValueError(f"budget must be positive, got {self.budget}")


@dataclass
class RunRecord:
    instance: str
    algorithm: str
    run: int
    seed: int
    best_fitness: int
    wall_time: float
    trace: list[TracePoint]
    best_set: list[int] = field(default_factory=list)  # original vertex ids
    population_size: int | None = None

    def sort_key(self) -> tuple[str, str, int]:
        return (self.instance, self.algorithm, self.run)


def cell_seed(base_seed: int, instance: str, algorithm: str, run: int) -> int:
    """Deterministic per-cell seed, independent across the grid."""
    key = f"{base_seed}|{instance}|{algorithm}|{run}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big") >> 1


def brkga_config(algorithm: str, budget: float, target: int | None) -> BrkgaConfig:
    params = PowerLawParams() if algorithm.startswith("fast") else StaticParams()
    return BrkgaConfig(
        params=params,
        prune=algorithm.endswith("-rev"),
        time_budget=budget,
        target_fitness=target,
    )


def solve_instance(
    algorithm: str,
    g: Graph,
    th: Thresholds,
    budget: float,
    seed: int,
    target: int | None = None,
) -> RunResult:
    """Run one algorithm on one instance and report it as a RunResult.

    Greedy algorithms ignore the seed, budget, and target; their trace
    is the single terminal point.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if algorithm in DETERMINISTIC_ALGORITHMS:
        t0 = time.perf_counter()
        seeds = mdg(g, th)
        if algorithm == "mdg-rev":
            seeds = reverse_mdg(g, th, seeds)
        wall = time.perf_counter() - t0
        fit = len(seeds)
        return RunResult(
            best_set=seeds,
            best_fitness=fit,
            trace=[TracePoint(wall, 0, fit)],
            iterations=0,
            wall_time=wall,
            evaluations=1,
            population_size=0,
            stopped="complete",
        )
    return brkga_run(g, th, brkga_config(algorithm, budget, target), seed)


def _result_to_record(
    instance: str, algorithm: str, run: int, seed: int, g: Graph, result: RunResult
) -> RunRecord:
    return RunRecord(
        instance=instance,
        algorithm=algorithm,
        run=run,
        seed=seed,
        best_fitness=result.best_fitness,
        wall_time=result.wall_time,
        trace=list(result.trace),
        best_set=[int(x) for x in g.to_original(result.best_set)],
        population_size=result.population_size or None,
    )


_INSTANCE_CACHE: dict[tuple[str, str], tuple[Graph, Thresholds]] = {}


def _load_instance(spec: InstanceSpec) -> tuple[Graph, Thresholds]:
    key = (spec.path, spec.thresholds)
    if key not in _INSTANCE_CACHE:
        try:
            g = load_graph(spec.path)
            if spec.thresholds == "majority":
                th = majority_thresholds(g)
            else:
                with open(spec.thresholds, encoding="utf-8") as fh:
                    th = thresholds_from_file(g, fh)
        except OSError as exc:
            raise RuntimeError(f"failed to load instance {spec.name!r}: {exc}") from exc
        _INSTANCE_CACHE[key] = (g, th)
    return _INSTANCE_CACHE[key]


def _run_cell(args: tuple[InstanceSpec, str, int, int, float]) -> RunRecord:
    spec, algorithm, run, seed, budget = args
    g, th = _load_instance(spec)
    result = solve_instance(algorithm, g, th, budget, seed, spec.target)
    return _result_to_record(spec.name, algorithm, run, seed, g, result)


def run_experiment(
    plan: ExperimentPlan,
    out_path: str | Path | None = None,
    workers: int = 1,
) -> list[RunRecord]:
    """Execute the full grid; returns records in canonical order.

    With ``out_path``, each finished record is appended immediately so a
    crash keeps partial results, then the file is rewritten in canonical
    order (instance, algorithm, run) on completion. ``workers`` > 1
    spreads the stochastic cells over a process pool; the deterministic
    algorithms always run inline, once per instance.
    """
    records: list[RunRecord] = []
    out_fh: IO[str] | None = None
    if out_path is not None:
        out_fh = open(out_path, "w", encoding="utf-8")

    def emit(record: RunRecord) -> None:
        records.append(record)
        if out_fh is not None:
            out_fh.write(json.dumps(_record_to_json(record)) + "\n")
            out_fh.flush()

    stochastic: list[tuple[InstanceSpec, str, int, int, float]] = []
    try:
        for spec in plan.instances:
            g, th = _load_instance(spec)
            budget = plan.budget if plan.budget is not None else default_budget(g.vertex_count)
            for algorithm in plan.algorithms:
                if algorithm in DETERMINISTIC_ALGORITHMS:
                    seed0 = cell_seed(plan.seed, spec.name, algorithm, 0)
                    result = solve_instance(algorithm, g, th, budget, seed0, spec.target)
                    for run in range(plan.runs):
                        seed = cell_seed(plan.seed, spec.name, algorithm, run)
                        emit(_result_to_record(spec.name, algorithm, run, seed, g, result))
                else:
                    for run in range(plan.runs):
                        seed = cell_seed(plan.seed, spec.name, algorithm, run)
                        stochastic.append((spec, algorithm, run, seed, budget))

        if workers > 1 and len(stochastic) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for record in pool.map(_run_cell, stochastic):
                    emit(record)
        else:
            for cell in stochastic:
                emit(_run_cell(cell))

        records.sort(key=RunRecord.sort_key)
        if out_fh is not None:
            out_fh.close()
            out_fh = None
            write_records(records, out_path)
    finally:
        if out_fh is not None:
            out_fh.close()
    return records


def _record_to_json(r: RunRecord) -> dict:
    return {
        "instance": r.instance,
        "algorithm": r.algorithm,
        "run": r.run,
        "seed": r.seed,
        "best_fitness": r.best_fitness,
        "wall_time": r.wall_time,
        "trace": [[e, i, f] for e, i, f in r.trace],
        "best_set": r.best_set,
        "population_size": r.population_size,
    }


def _record_from_json(obj: dict) -> RunRecord:
    return RunRecord(
        instance=obj["instance"],
        algorithm=obj["algorithm"],
        run=int(obj["run"]),
        seed=int(obj["seed"]),
        best_fitness=int(obj["best_fitness"]),
        wall_time=float(obj["wall_time"]),
        trace=[TracePoint(float(e), int(i), int(f)) for e, i, f in obj["trace"]],
        best_set=[int(x) for x in obj.get("best_set", [])],
        population_size=obj.get("population_size"),
    )


def write_records(records: Iterable[RunRecord], path: str | Path) -> None:
    """Persist records as JSON Lines (one object per line)."""
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(_record_to_json(r)) + "\n")


def read_records(path: str | Path) -> list[RunRecord]:
    with open(path, encoding="utf-8") as fh:
        return [_record_from_json(json.loads(line)) for line in fh if line.strip()]


@dataclass(frozen=True)
class SummaryRow:
    instance: str
    algorithm: str
    runs: int
    best: int
    avg: float  # rounded to one decimal
    avg_time: float


def summarize(records: Sequence[RunRecord]) -> list[SummaryRow]:
    """Best / Avg per (instance, algorithm) cell, in canonical order."""
    groups: dict[tuple[str, str], list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.instance, r.algorithm), []).append(r)
    rows = []
    for (instance, algorithm), cell in sorted(groups.items()):
        fits = [r.best_fitness for r in cell]
        rows.append(
            SummaryRow(
                instance=instance,
                algorithm=algorithm,
                runs=len(cell),
                best=min(fits),
                avg=round(mean(fits), 1),
                avg_time=mean(r.wall_time for r in cell),
            )
        )
    return rows


def summary_csv(rows: Sequence[SummaryRow]) -> str:
    lines = ["instance,algorithm,runs,best,avg,avg_time"]
    for r in rows:
        lines.append(f"{r.instance},{r.algorithm},{r.runs},{r.best},{r.avg:.1f},{r.avg_time:.3f}")
    return "\n".join(lines) + "\n"


def summary_table(rows: Sequence[SummaryRow]) -> str:
    """Aligned-text Best/Avg table."""
    header = ("instance", "algorithm", "runs", "best", "avg", "avg time [s]")
    cells = [header] + [
        (r.instance, r.algorithm, str(r.runs), str(r.best), f"{r.avg:.1f}", f"{r.avg_time:.3f}")
        for r in rows
    ]
    widths = [max(len(row[c]) for row in cells) for c in range(len(header))]
    out = []
    for i, row in enumerate(cells):
        out.append("  ".join(col.ljust(w) for col, w in zip(row, widths)).rstrip())
        if i == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def mann_whitney_u(a: Sequence[float], b: Sequence[float]) -> float:
    """Two-sided Mann-Whitney U test p-value.

    Small samples (min size below 8) get the exact permutation
    distribution, which handles ties without approximation, as long as
    the combination count stays tractable; everything else uses the
    tie-corrected normal approximation with continuity correction.
    """
    a = list(a)
    b = list(b)
    if not a or not b:
        raise ValueError("mann_whitney_u requires two non-empty samples")
    n1, n2 = len(a), len(b)
    n = n1 + n2
    ranks = rankdata(np.asarray(a + b, dtype=np.float64))
    u_obs = float(ranks[:n1].sum()) - n1 * (n1 + 1) / 2
    mu = n1 * n2 / 2
    dev = abs(u_obs - mu)

    if min(n1, n2) < EXACT_MWU_CUTOFF and math.comb(n, n1) <= EXACT_MWU_MAX_COMBINATIONS:
        offset = n1 * (n1 + 1) / 2
        hits = 0
        total = 0
        for combo in itertools.combinations(range(n), n1):
            u = sum(ranks[i] for i in combo) - offset
            # epsilon absorbs float noise in tied average ranks
            if abs(u - mu) >= dev - 1e-12:
                hits += 1
            total += 1
        return hits / total

    _, tie_counts = np.unique(np.asarray(a + b, dtype=np.float64), return_counts=True)
    tie_term = float(((tie_counts**3) - tie_counts).sum()) / (n * (n - 1))
    sigma_sq = (n1 * n2 / 12) * ((n + 1) - tie_term)
    if sigma_sq <= 0:
        return 1.0  # all values tied
    z = max(dev - 0.5, 0.0) / math.sqrt(sigma_sq)
    return min(1.0, math.erfc(z / math.sqrt(2)))


def exact_min_target_set(g: Graph, th: Thresholds, max_vertices: int = 20) -> np.ndarray:
    """Minimum-cardinality valid seed set by subset enumeration.

    Subsets are tried in order of increasing size, so the first valid
    one is optimal. Refuses graphs above ``max_vertices`` (the search
    is exponential).
    """
    n = g.vertex_count
    if n > max_vertices:
        raise ValueError(f"exact search is limited to {max_vertices} vertices, got {n}")
    state = DiffusionState(g, th)
    mask = np.zeros(n, dtype=np.bool_)
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            mask[list(combo)] = True
            covered = state.reset(mask) == n
            mask[list(combo)] = False
            if covered:
                return np.asarray(combo, dtype=np.int64)
    raise AssertionError("the full vertex set is always valid")


def read_plan(path: str | Path) -> ExperimentPlan:
    """Load a plan file: JSON with keys instances, algorithms, runs, budget, seed.

    Each instance is either a path string or an object with keys
    ``path`` and optionally ``name``, ``thresholds``, ``target``.
    """
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    instances = []
    for entry in data["instances"]:
        if isinstance(entry, str):
            instances.append(InstanceSpec(path=entry))
        else:
            instances.append(
                InstanceSpec(
                    path=entry["path"],
                    name=entry.get("name", ""),
                    thresholds=entry.get("thresholds", "majority"),
                    target=entry.get("target"),
                )
            )
    return ExperimentPlan(
        instances=tuple(instances),
        algorithms=tuple(data.get("algorithms", ALGORITHMS)),
        runs=int(data.get("runs", DEFAULT_RUNS)),
        budget=data.get("budget"),
        seed=int(data.get("seed", 0)),
    )
