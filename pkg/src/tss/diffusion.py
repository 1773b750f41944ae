"""Threshold diffusion: closures, incremental activation, fitness.

The process: a seed set starts active, and an inactive vertex activates
as soon as at least ``theta[v]`` of its neighbors are active. Rounds
repeat until nothing changes; the result (the closure of the seed set)
is independent of processing order, so a BFS over newly active vertices
computes it exactly.

A :class:`DiffusionState` owns the buffers and supports incremental
growth: the closure of ``S + {v}`` equals the closure of
``closure(S) + {v}``, so adding one seed to an existing fixed point
only propagates the new activations.
"""

from __future__ import annotations

from typing import Iterable, Union

import numpy as np

from . import kernels
from .graph import Graph, Thresholds

VertexSet = Union[Iterable[int], np.ndarray]


class DiffusionState:
    """Mutable fixed-point of the threshold process for one (graph, theta) pair.

    ``active`` is the closure of every seed passed in so far plus all
    theta-0 vertices; ``counts[v]`` is the number of active neighbors
    of v. ``n_active`` is maintained incrementally.
    """

    __slots__ = ("graph", "thresholds", "active", "counts", "_queue", "n_active")

    def __init__(self, graph: Graph, thresholds: Thresholds):
        n = graph.vertex_count
        self.graph = graph
        self.thresholds = thresholds
        self.active = np.zeros(n, dtype=np.bool_)
        self.counts = np.zeros(n, dtype=np.int32)
        self._queue = np.empty(n, dtype=np.int32)
        self.n_active = 0

    def reset(self, seed_mask: np.ndarray) -> int:
        """Recompute the state as the closure of ``seed_mask`` from scratch."""
        self.n_active = kernels.spread_into(
            self.graph.indptr,
            self.graph.indices,
            self.thresholds.values,
            seed_mask,
            self.active,
            self.counts,
            self._queue,
        )
        return self.n_active

    def add(self, v: int) -> int:
        """Activate ``v`` and propagate; no-op if already active."""
        self.n_active = kernels.add_and_spread_inplace(
            self.graph.indptr,
            self.graph.indices,
            self.thresholds.values,
            self.active,
            self.counts,
            self._queue,
            v,
            self.n_active,
        )
        return self.n_active

    @property
    def covers_all(self) -> bool:
        return self.n_active == self.graph.vertex_count

    def active_set(self) -> np.ndarray:
        """Active vertex ids, ascending."""
        return np.nonzero(self.active)[0].astype(np.int64)


def _as_mask(n: int, seeds: VertexSet) -> np.ndarray:
    mask = np.zeros(n, dtype=np.bool_)
    idx = np.asarray(list(seeds) if not isinstance(seeds, np.ndarray) else seeds, dtype=np.int64)
    if len(idx):
        if idx.min() < 0 or idx.max() >= n:
            raise ValueError(f"seed vertex out of range [0, {n})")
        mask[idx] = True
    return mask


def state_from_set(graph: Graph, thresholds: Thresholds, seeds: VertexSet) -> DiffusionState:
    """Closure of ``seeds`` as a reusable incremental state."""
    state = DiffusionState(graph, thresholds)
    state.reset(_as_mask(graph.vertex_count, seeds))
    return state


def spread(graph: Graph, thresholds: Thresholds, seeds: VertexSet) -> np.ndarray:
    """Activation closure of ``seeds``: the set of eventually active vertices."""
    return state_from_set(graph, thresholds, seeds).active_set()


def add_and_spread(state: DiffusionState, v: int) -> DiffusionState:
    """Grow an existing closure by one seed, in place."""
    state.add(v)
    return state


def is_valid(graph: Graph, thresholds: Thresholds, seeds: VertexSet) -> bool:
    """Does ``seeds`` activate every vertex?"""
    return state_from_set(graph, thresholds, seeds).covers_all


def fitness(graph: Graph, thresholds: Thresholds, seeds: VertexSet) -> int:
    """Seed count if the set covers the graph, else |V| + 1.

    Any valid set (the whole vertex set is one) beats any invalid one
    under this measure, so minimizing it solves the selection problem.
    """
    seeds = np.asarray(list(seeds) if not isinstance(seeds, np.ndarray) else seeds, dtype=np.int64)
    state = state_from_set(graph, thresholds, seeds)
    if state.covers_all:
        return int(len(np.unique(seeds)))
    return graph.vertex_count + 1
