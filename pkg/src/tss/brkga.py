"""Biased random-key genetic algorithm over the greedy decoder.

Individuals are weight vectors in [0, 1]^V; the decoder ranks vertices
by weight times degree and greedily builds a valid seed set, so every
individual maps to a feasible solution and fitness is just the decoded
set size. Optionally each decoded set is pruned to a 1-minimal one
before scoring.

Per generation the population splits into elites (best individuals,
kept and not re-evaluated), fresh uniform mutants, and crossover
children that inherit each component from an elite parent with a fixed
bias. The split fractions and the bias either stay constant or are
redrawn each generation from power-law grids, which is the on-the-fly
control mode.

All randomness flows through one ``numpy`` generator in a fixed draw
order (documented on :func:`run`), so a seed fully determines a run.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Union

import numpy as np

from .graph import Graph, Thresholds
from .greedy import Scratch, decode, reverse_mdg
from .powerlaw import ParameterSampler, ParameterTriple

DEFAULT_POPULATION_SIZE = 46


@dataclass(frozen=True)
class StaticParams:
    """Fixed control parameters for every generation.

    Defaults are the most likely values of the power-law grids.
    """

    elite_fraction: float = 0.24
    mutant_fraction: float = 0.11
    bias: float = 0.51

    def __post_init__(self):
        if not 0.0 < self.elite_fraction <= 1.0:
            raise ValueError(f"elite fraction must be in (0, 1], got {self.elite_fraction}")
        if not 0.0 <= self.mutant_fraction <= 1.0:
            raise ValueError(f"mutant fraction must be in [0, 1], got {self.mutant_fraction}")
        if not 0.0 <= self.bias <= 1.0:
            raise ValueError(f"bias must be in [0, 1], got {self.bias}")


@dataclass(frozen=True)
class PowerLawParams:
    """Redraw (elite, mutant, bias) from power-law grids each generation."""

    beta: float = 1.5


Params = Union[StaticParams, PowerLawParams]


@dataclass(frozen=True)
class BrkgaConfig:
    population_size: int = DEFAULT_POPULATION_SIZE
    params: Params = field(default_factory=PowerLawParams)
    prune: bool = False
    time_budget: float | None = None
    max_iterations: int | None = None
    target_fitness: int | None = None

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError(f"population size must be >= 2, got {self.population_size}")
        if self.time_budget is None and self.max_iterations is None:
            raise ValueError("need a stop condition: time_budget or max_iterations")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError(f"time budget must be positive, got {self.time_budget}")
        if self.max_iterations is not None and self.max_iterations < 0:
            raise ValueError(f"max iterations must be >= 0, got {self.max_iterations}")


class TracePoint(NamedTuple):
    """Best-so-far sample: written at init, on improvement, at termination."""

    elapsed: float
    iteration: int
    best_fitness: int


@dataclass
class RunResult:
    best_set: np.ndarray
    best_fitness: int
    trace: list[TracePoint]
    iterations: int
    wall_time: float
    evaluations: int
    population_size: int
    stopped: str  # "target" | "iterations" | "budget"


def _ceil_count(fraction: float, n: int) -> int:
    # round() guards against float noise like 0.2 * 45 = 9.000000000000002
    return math.ceil(round(fraction * n, 9))


def init_population(n_vertices: int, n_individuals: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random individuals, plus one all-0.5 individual appended last.

    The constant individual decodes to the plain maximum-degree greedy
    solution, so the initial best is never worse than that baseline.
    """
    pop = np.empty((n_individuals, n_vertices), dtype=np.float64)
    pop[: n_individuals - 1] = rng.random((n_individuals - 1, n_vertices))
    pop[n_individuals - 1] = 0.5
    return pop


def evaluate(
    g: Graph,
    th: Thresholds,
    genes: np.ndarray,
    prune: bool = False,
    scratch: Scratch | None = None,
) -> tuple[int, np.ndarray]:
    """Decode one individual (optionally pruning) to (fitness, seed set)."""
    seeds = decode(g, th, genes, scratch)
    if prune:
        seeds = reverse_mdg(g, th, seeds, scratch)
    return len(seeds), seeds


def select_elites(fitnesses: np.ndarray, n_elites: int) -> np.ndarray:
    """Indices of the ``n_elites`` best individuals, ties by position."""
    return np.argsort(fitnesses, kind="stable")[:n_elites]


def crossover(x: np.ndarray, y: np.ndarray, bias: float, rng: np.random.Generator) -> np.ndarray:
    """Per-component mix: take the elite parent's gene with probability ``bias``."""
    mask = rng.random(len(x)) < bias
    return np.where(mask, y, x)


def evolve_step(
    g: Graph,
    th: Thresholds,
    population: np.ndarray,
    fitnesses: np.ndarray,
    params: ParameterTriple,
    rng: np.random.Generator,
    prune: bool = False,
    scratch: Scratch | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """One generation. Returns (population, fitnesses, best_seeds_or_empty, evals).

    Layout of the next population: elites first (copied, fitness kept),
    then mutants, then children. Elite count is clamped so at least one
    elite survives; the mutant count is clamped so the split fits.
    ``best_seeds_or_empty`` is the seed set of the best newly evaluated
    individual only if it improves on the carried elites, else empty.
    """
    n_ind, n = population.shape
    n_elites = min(max(_ceil_count(params.elite_fraction, n_ind), 1), n_ind)
    n_mutants = min(_ceil_count(params.mutant_fraction, n_ind), n_ind - n_elites)
    n_children = n_ind - n_elites - n_mutants

    elite_idx = select_elites(fitnesses, n_elites)
    new_pop = np.empty_like(population)
    new_fit = np.empty_like(fitnesses)
    new_pop[:n_elites] = population[elite_idx]
    new_fit[:n_elites] = fitnesses[elite_idx]

    if n_mutants:
        new_pop[n_elites : n_elites + n_mutants] = rng.random((n_mutants, n))
    for i in range(n_children):
        xi = int(rng.integers(n_ind))
        yi = int(elite_idx[rng.integers(n_elites)])
        new_pop[n_elites + n_mutants + i] = crossover(
            population[xi], population[yi], params.bias, rng
        )

    best_new = g.vertex_count + 2
    best_seeds = np.empty(0, dtype=np.int64)
    for i in range(n_elites, n_ind):
        fit, seeds = evaluate(g, th, new_pop[i], prune, scratch)
        new_fit[i] = fit
        if fit < best_new:
            best_new = fit
            best_seeds = seeds
    if best_new >= new_fit[:n_elites].min(initial=g.vertex_count + 2):
        best_seeds = np.empty(0, dtype=np.int64)
    return new_pop, new_fit, best_seeds, n_ind - n_elites


ParameterSource = Callable[[np.random.Generator], ParameterTriple]


def _parameter_source(params: Params) -> ParameterSource:
    if isinstance(params, StaticParams):
        triple = ParameterTriple(params.elite_fraction, params.mutant_fraction, params.bias)
        return lambda rng: triple
    sampler = ParameterSampler(params.beta)
    return sampler.sample


def run(
    g: Graph,
    th: Thresholds,
    config: BrkgaConfig,
    rng: np.random.Generator | int,
    parameter_source: ParameterSource | None = None,
    clock: Callable[[], float] = time.perf_counter,
) -> RunResult:
    """Full evolutionary run under the configured stop conditions.

    Draw order, fixed for reproducibility: population init (uniform
    block, constant individual appended without a draw); then per
    generation the parameter triple (three uniforms in power-law mode,
    none in static mode), the mutant block, and per child the parent
    index, the elite index, and the crossover mask.

    Stop conditions, checked in this order: ``target_fitness`` reached
    (also directly after init), ``max_iterations`` completed, and
    ``time_budget`` exhausted (checked between generations, so the last
    generation may overshoot). ``parameter_source`` overrides the
    configured parameter mode when given; tests use this to splice in
    scripted schedules.
    """
    if isinstance(rng, (int, np.integer)):
        rng = np.random.default_rng(int(rng))
    t0 = clock()
    n = g.vertex_count
    n_ind = config.population_size
    scratch = Scratch.for_graph(g)
    source = parameter_source or _parameter_source(config.params)

    population = init_population(n, n_ind, rng)
    fitnesses = np.empty(n_ind, dtype=np.int64)
    best_fitness = n + 2
    best_seeds = np.empty(0, dtype=np.int64)
    for i in range(n_ind):
        fit, seeds = evaluate(g, th, population[i], config.prune, scratch)
        fitnesses[i] = fit
        if fit < best_fitness:
            best_fitness = fit
            best_seeds = seeds
    evaluations = n_ind
    trace = [TracePoint(clock() - t0, 0, best_fitness)]

    iteration = 0
    stopped = None
    while stopped is None:
        if config.target_fitness is not None and best_fitness <= config.target_fitness:
            stopped = "target"
        elif config.max_iterations is not None and iteration >= config.max_iterations:
            stopped = "iterations"
        elif config.time_budget is not None and clock() - t0 >= config.time_budget:
            stopped = "budget"
        else:
            params = source(rng)
            population, fitnesses, gen_best_seeds, evals = evolve_step(
                g, th, population, fitnesses, params, rng, config.prune, scratch
            )
            assert population.shape == (n_ind, n)
            evaluations += evals
            iteration += 1
            gen_best = int(fitnesses.min())
            if gen_best < best_fitness:
                best_fitness = gen_best
                if len(gen_best_seeds):
                    best_seeds = gen_best_seeds
                trace.append(TracePoint(clock() - t0, iteration, best_fitness))

    wall = clock() - t0
    trace.append(TracePoint(wall, iteration, best_fitness))
    assert all(a.best_fitness >= b.best_fitness for a, b in zip(trace, trace[1:]))
    return RunResult(
        best_set=np.asarray(best_seeds, dtype=np.int64),
        best_fitness=int(best_fitness),
        trace=trace,
        iterations=iteration,
        wall_time=wall,
        evaluations=evaluations,
        population_size=n_ind,
        stopped=stopped,
    )
