"""Undirected simple graphs and per-vertex activation thresholds.

Instances are SNAP-style edge lists: whitespace-separated vertex-id
pairs, one edge per line, with ``#`` starting a comment line. Input ids
are arbitrary non-negative integers; they are renumbered to a dense
``0..n-1`` range at parse time and ``Graph.original_ids`` keeps the
reverse map so results can always be reported in the source ids.
Self-loops and duplicate edges are dropped silently, with counts
retained in :class:`ParseMeta`.

Adjacency is stored CSR-style (flat neighbor array plus row offsets)
with neighbor lists sorted ascending. Graphs and thresholds are
immutable after construction and safe to share across workers.
"""

from __future__ import annotations

import gzip
import io
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import IO, Iterable, Iterator

import numpy as np

GZIP_MAGIC = b"\x1f\x8b"


class ParseError(ValueError):
    """Malformed instance text; carries the offending 1-based line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class ParseMeta:
    """What normalization dropped while reading an edge list."""

    self_loops_dropped: int = 0
    duplicate_edges_dropped: int = 0


class Graph:
    """Immutable undirected simple graph with degree-indexed adjacency."""

    def __init__(
        self,
        indptr: np.ndarray,
        indices: np.ndarray,
        original_ids: np.ndarray,
        meta: ParseMeta = ParseMeta(),
    ):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.original_ids = np.ascontiguousarray(original_ids, dtype=np.int64)
        self.degrees = np.diff(self.indptr).astype(np.int64)
        self.meta = meta
        for arr in (self.indptr, self.indices, self.original_ids, self.degrees):
            arr.setflags(write=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph on vertices ``0..n-1`` from an edge iterable.

        Self-loops and duplicates are dropped, mirroring the parser.
        """
        unique: set[tuple[int, int]] = set()
        loops = 0
        dups = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                loops += 1
                continue
            e = (u, v) if u < v else (v, u)
            if e in unique:
                dups += 1
            else:
                unique.add(e)
        indptr, indices = _edges_to_csr(n, sorted(unique))
        meta = ParseMeta(self_loops_dropped=loops, duplicate_edges_dropped=dups)
        return cls(indptr, indices, np.arange(n, dtype=np.int64), meta)

    @property
    def vertex_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of ``v`` (read-only view)."""
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as internal-id pairs with u < v, ascending."""
        for u in range(self.vertex_count):
            for v in self.neighbors(u):
                if v > u:
                    yield u, int(v)

    @cached_property
    def _original_to_internal(self) -> dict[int, int]:
        return {int(orig): i for i, orig in enumerate(self.original_ids)}

    def internal_id(self, original_id: int) -> int:
        try:
            return self._original_to_internal[original_id]
        except KeyError:
            raise ValueError(f"unknown vertex id {original_id}") from None

    def to_original(self, internal: Iterable[int]) -> np.ndarray:
        return self.original_ids[np.asarray(list(internal), dtype=np.int64)]

    @cached_property
    def degree_order_desc(self) -> np.ndarray:
        """Vertex ids by descending degree, ties by ascending id."""
        order = np.argsort(-self.degrees, kind="stable").astype(np.int32)
        order.setflags(write=False)
        return order

    @cached_property
    def degree_order_asc(self) -> np.ndarray:
        """Vertex ids by ascending degree, ties by ascending id."""
        order = np.argsort(self.degrees, kind="stable").astype(np.int32)
        order.setflags(write=False)
        return order

    def __repr__(self) -> str:
        return f"Graph(|V|={self.vertex_count}, |E|={self.edge_count})"


def _edges_to_csr(n: int, edges: list[tuple[int, int]]) -> tuple[np.ndarray, np.ndarray]:
    m = len(edges)
    if m == 0:
        return np.zeros(n + 1, dtype=np.int64), np.empty(0, dtype=np.int32)
    eu = np.fromiter((e[0] for e in edges), dtype=np.int64, count=m)
    ev = np.fromiter((e[1] for e in edges), dtype=np.int64, count=m)
    src = np.concatenate([eu, ev])
    dst = np.concatenate([ev, eu])
    order = np.lexsort((dst, src))
    indices = dst[order].astype(np.int32)
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, indices


def _iter_lines(text: str | IO[str] | Iterable[str]) -> Iterable[str]:
    if isinstance(text, str):
        return io.StringIO(text)
    return text


def parse_edge_list(text: str | IO[str] | Iterable[str]) -> Graph:
    """Parse SNAP-style edge-list text into a normalized :class:`Graph`.

    Vertex ids appearing anywhere in the input (including in dropped
    self-loops) become vertices; ids are densely renumbered in ascending
    order of the original id.

    Raises :class:`ParseError` for non-integer tokens, an odd token
    count on a line, or negative ids, naming the line number.
    """
    vertex_ids: set[int] = set()
    edges: set[tuple[int, int]] = set()
    loops = 0
    dups = 0
    for line_no, raw in enumerate(_iter_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) % 2 != 0:
            raise ParseError(f"expected vertex-id pairs, got {len(tokens)} tokens", line_no)
        try:
            ids = [int(t) for t in tokens]
        except ValueError:
            bad = next(t for t in tokens if not _is_int(t))
            raise ParseError(f"non-integer token {bad!r}", line_no) from None
        if any(i < 0 for i in ids):
            raise ParseError("negative vertex id", line_no)
        for k in range(0, len(ids), 2):
            u, v = ids[k], ids[k + 1]
            vertex_ids.add(u)
            vertex_ids.add(v)
            if u == v:
                loops += 1
                continue
            e = (u, v) if u < v else (v, u)
            if e in edges:
                dups += 1
            else:
                edges.add(e)
    original = np.fromiter(sorted(vertex_ids), dtype=np.int64, count=len(vertex_ids))
    remap = {orig: i for i, orig in enumerate(original.tolist())}
    internal = sorted((remap[u], remap[v]) for u, v in edges)
    indptr, indices = _edges_to_csr(len(original), internal)
    meta = ParseMeta(self_loops_dropped=loops, duplicate_edges_dropped=dups)
    return Graph(indptr, indices, original, meta)


def _is_int(token: str) -> bool:
    try:
        int(token)
        return True
    except ValueError:
        return False


def load_graph(path: str | Path) -> Graph:
    """Load an edge list from a file, transparently handling gzip.

    Compression is detected from the magic bytes, not the file name.
    """
    path = Path(path)
    with open(path, "rb") as fh:
        magic = fh.read(2)
    opener = gzip.open if magic == GZIP_MAGIC else open
    with opener(path, "rt", encoding="utf-8") as fh:  # type: ignore[operator]
        return parse_edge_list(fh)


def write_edge_list(g: Graph, target: str | Path | IO[str]) -> None:
    """Write the graph as an edge list in original vertex ids."""
    if isinstance(target, (str, Path)):
        with open(target, "w", encoding="utf-8") as fh:
            write_edge_list(g, fh)
        return
    orig = g.original_ids
    for u, v in g.edges():
        target.write(f"{orig[u]} {orig[v]}\n")


@dataclass(frozen=True)
class Thresholds:
    """Per-vertex activation thresholds with 0 <= theta[v] <= deg(v)."""

    values: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.int32)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> int:
        return int(self.values[v])


def majority_thresholds(g: Graph) -> Thresholds:
    """Thresholds of half the degree, rounded up; isolated vertices get 0."""
    return Thresholds((g.degrees + 1) // 2)


def validate_thresholds(g: Graph, th: Thresholds) -> None:
    """Check 0 <= theta[v] <= deg(v) everywhere; raise naming a violator."""
    values = th.values
    if len(values) != g.vertex_count:
        raise ValueError(
            f"threshold vector has {len(values)} entries for {g.vertex_count} vertices"
        )
    bad = np.nonzero((values < 0) | (values > g.degrees))[0]
    if len(bad):
        v = int(bad[0])
        raise ValueError(
            f"threshold {int(values[v])} out of range [0, {g.degree(v)}] "
            f"for vertex {int(g.original_ids[v])}"
        )


def thresholds_from_file(g: Graph, text: str | IO[str] | Iterable[str]) -> Thresholds:
    """Read explicit ``id value`` threshold lines; unlisted vertices get the majority rule.

    Ids are original (pre-renumbering) ids. Unknown ids and values
    outside ``[0, deg(v)]`` raise, naming the offender.
    """
    values = np.array(majority_thresholds(g).values, dtype=np.int32)
    for line_no, raw in enumerate(_iter_lines(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected 'id value', got {len(tokens)} tokens", line_no)
        try:
            orig, val = int(tokens[0]), int(tokens[1])
        except ValueError:
            bad = next(t for t in tokens if not _is_int(t))
            raise ParseError(f"non-integer token {bad!r}", line_no) from None
        v = g.internal_id(orig)
        if not 0 <= val <= g.degree(v):
            raise ValueError(
                f"threshold {val} out of range [0, {g.degree(v)}] for vertex {orig}"
            )
        values[v] = val
    th = Thresholds(values)
    validate_thresholds(g, th)
    return th
