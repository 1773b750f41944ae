"""Greedy construction and pruning heuristics.

``mdg`` builds a seed set by repeatedly taking the maximum-degree
vertex not yet activated by the current set's cascade. ``decode`` is
the same loop with degrees reweighted by a per-vertex key vector, which
is how random keys are turned into seed sets. ``reverse_mdg`` is the
complementary pruning pass: sweep all vertices by ascending degree and
drop every seed whose removal keeps the set valid.

All three rank ties by ascending vertex id, so results are fully
deterministic for a given graph and input.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .graph import Graph, Thresholds


class Scratch:
    """Reusable work arrays for repeated solves on one graph.

    Evaluation-heavy callers (population loops) allocate one Scratch
    and pass it to every call; casual callers can omit it.
    """

    __slots__ = ("active", "counts", "queue", "selected", "in_set")

    def __init__(self, n: int):
        self.active = np.zeros(n, dtype=np.bool_)
        self.counts = np.zeros(n, dtype=np.int32)
        self.queue = np.empty(n, dtype=np.int32)
        self.selected = np.empty(n, dtype=np.int32)
        self.in_set = np.zeros(n, dtype=np.bool_)

    @classmethod
    def for_graph(cls, g: Graph) -> "Scratch":
        return cls(g.vertex_count)


def _greedy_by_order(g: Graph, th: Thresholds, order: np.ndarray, scratch: Scratch | None) -> np.ndarray:
    s = scratch or Scratch.for_graph(g)
    n_sel = kernels.greedy_cover(
        g.indptr, g.indices, th.values, order, s.active, s.counts, s.queue, s.selected
    )
    return np.sort(s.selected[:n_sel]).astype(np.int64)


def mdg(g: Graph, th: Thresholds, scratch: Scratch | None = None) -> np.ndarray:
    """Maximum-degree greedy seed set, returned as sorted vertex ids.

    Vertices already activated by the running cascade are never
    selected, so the result is valid by construction.
    """
    return _greedy_by_order(g, th, g.degree_order_desc, scratch)


def decode(g: Graph, th: Thresholds, weights: np.ndarray, scratch: Scratch | None = None) -> np.ndarray:
    """Greedy seed set ranked by ``weights[v] * deg(v)`` descending.

    ``weights`` is one gene vector in [0, 1]^n. A constant weight
    vector reproduces ``mdg`` exactly, including tie order.
    """
    if len(weights) != g.vertex_count:
        raise ValueError(f"weight vector has {len(weights)} entries for {g.vertex_count} vertices")
    scores = np.asarray(weights, dtype=np.float64) * g.degrees
    order = np.argsort(-scores, kind="stable").astype(np.int32)
    return _greedy_by_order(g, th, order, scratch)


def reverse_mdg(g: Graph, th: Thresholds, seeds: np.ndarray, scratch: Scratch | None = None) -> np.ndarray:
    """Prune ``seeds`` to a 1-minimal subset, trying low degrees first.

    Every vertex of the graph is tried once in ascending degree order;
    members of the set whose removal leaves it valid are dropped. The
    input must be valid, and validity is preserved. The result needs
    every remaining seed: no single further removal stays valid.
    """
    s = scratch or Scratch.for_graph(g)
    s.in_set[:] = False
    seeds = np.asarray(seeds, dtype=np.int64)
    if len(seeds):
        s.in_set[seeds] = True
    n = kernels.spread_into(
        g.indptr, g.indices, th.values, s.in_set, s.active, s.counts, s.queue
    )
    if n != g.vertex_count:
        raise ValueError("reverse_mdg requires a valid seed set")
    kernels.prune_ascending(
        g.indptr, g.indices, th.values, g.degree_order_asc, s.in_set, s.active, s.counts, s.queue
    )
    return np.nonzero(s.in_set)[0].astype(np.int64)
