"""Jitted cascade kernels over CSR adjacency.

Everything here is allocation-free on the hot path: callers own the
work arrays (activation mask, neighbor counts, BFS queue) and the
kernels mutate them in place. The layout contract is shared by all
kernels: ``indptr`` int64 of length n+1, ``indices`` int32, ``theta``
int32, ``active`` bool, ``counts``/``queue`` int32 of length n.

The queue doubles as a log: after a call, ``queue[:n_active]`` holds
every active vertex in activation order, which lets greedy selection
and pruning read back cascade members without a mask scan.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _cascade(indptr, indices, theta, active, counts, queue, tail, n_active):
    """Run the threshold process from the queued frontier to a fixed point.

    Precondition: ``queue[:tail]`` holds all active-but-unprocessed
    vertices and ``counts`` reflects edges from processed ones only.
    Returns the total number of active vertices.
    """
    head = 0
    while head < tail:
        x = queue[head]
        head += 1
        for j in range(indptr[x], indptr[x + 1]):
            u = indices[j]
            counts[u] += 1
            if not active[u] and counts[u] >= theta[u]:
                active[u] = True
                queue[tail] = u
                tail += 1
                n_active += 1
    return n_active


@njit(cache=True)
def spread_into(indptr, indices, theta, seed_mask, active, counts, queue):
    """Activation closure of ``seed_mask``, written into ``active``.

    ``active`` and ``counts`` are overwritten, not read. Vertices with
    theta == 0 activate unconditionally. Returns the active count.
    """
    n = len(active)
    tail = 0
    n_active = 0
    for v in range(n):
        counts[v] = 0
        if seed_mask[v] or theta[v] == 0:
            active[v] = True
            queue[tail] = v
            tail += 1
            n_active += 1
        else:
            active[v] = False
    return _cascade(indptr, indices, theta, active, counts, queue, tail, n_active)


@njit(cache=True)
def add_and_spread_inplace(indptr, indices, theta, active, counts, queue, v, n_active):
    """Activate ``v`` in an existing fixed point and re-run the cascade.

    ``active``/``counts`` must describe a fixed point of the process
    (as left by :func:`spread_into` or a previous call). ``queue`` is
    reused as scratch from slot 0. No-op if ``v`` is already active.
    Returns the new active count.
    """
    if active[v]:
        return n_active
    active[v] = True
    queue[0] = v
    return _cascade(indptr, indices, theta, active, counts, queue, 1, n_active + 1)


@njit(cache=True)
def greedy_cover(indptr, indices, theta, order, active, counts, queue, selected):
    """Pick seeds in ``order`` priority until the cascade covers the graph.

    Starts from the closure of the empty set, then repeatedly takes the
    first not-yet-active vertex of ``order`` (a permutation of all
    vertices, highest priority first), adds it, and re-spreads. Writes
    the chosen seeds to ``selected`` and returns how many were chosen.
    """
    n = len(active)
    zero = np.zeros(n, dtype=np.bool_)
    n_active = spread_into(indptr, indices, theta, zero, active, counts, queue)
    n_sel = 0
    pos = 0
    while n_active < n:
        while active[order[pos]]:
            pos += 1
        v = order[pos]
        selected[n_sel] = v
        n_sel += 1
        n_active = add_and_spread_inplace(
            indptr, indices, theta, active, counts, queue, v, n_active
        )
    return n_sel


@njit(cache=True)
def prune_ascending(indptr, indices, theta, order, in_set, active, counts, queue):
    """Drop redundant seeds, trying every vertex once in ``order``.

    For each v in ``order`` currently in the set, tentatively remove it
    and recompute the closure from scratch; keep the removal only if the
    remaining set still covers the graph. ``in_set`` is updated in
    place. Returns the surviving set size.
    """
    n = len(active)
    size = 0
    for v in range(n):
        if in_set[v]:
            size += 1
    for i in range(n):
        v = order[i]
        if not in_set[v]:
            continue
        in_set[v] = False
        n_active = spread_into(indptr, indices, theta, in_set, active, counts, queue)
        if n_active == n:
            size -= 1
        else:
            in_set[v] = True
    return size
