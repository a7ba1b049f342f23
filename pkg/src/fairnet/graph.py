"""Undirected simple graphs: storage, edge-list ingestion, shortest-path queries."""

from __future__ import annotations

import logging
import re
from bisect import bisect_left, insort
from collections import deque
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Iterable, Iterator, Sequence

import numpy as np

log = logging.getLogger(__name__)

UNREACHABLE = -1
"""Marker used in raw hop arrays for nodes with no path to any source.

Real hop counts are never negative, so the marker cannot collide with one.
Prefer the typed accessors on DistanceField, which return None instead.
"""

_SPLIT = re.compile(r"[\s,]+")


class EdgeListParseError(ValueError):
    """A non-comment line of an edge-list input did not hold exactly two labels."""

    def __init__(self, line_number: int, line: str):
        super().__init__(f"line {line_number}: expected two labels, got {line.strip()!r}")
        self.line_number = line_number


class Graph:
    """Undirected simple graph over dense node ids 0..n-1.

    Neighbor lists are kept sorted, so iteration order is stable regardless
    of insertion order.  Labels map node ids back to the identifiers found
    in the input; generated graphs use stringified ids.  Reads are safe to
    share; mutation assumes the caller owns the instance exclusively.
    """

    __slots__ = ("_adj", "_labels", "_index", "_m")

    def __init__(self, labels: Sequence[str]):
        self._labels = [str(x) for x in labels]
        self._index = {lab: i for i, lab in enumerate(self._labels)}
        if len(self._index) != len(self._labels):
            raise ValueError("duplicate node labels")
        self._adj: list[list[int]] = [[] for _ in self._labels]
        self._m = 0

    @classmethod
    def empty(cls, node_count: int) -> "Graph":
        """Edge-free graph whose labels are the stringified ids."""
        return cls([str(i) for i in range(node_count)])

    @classmethod
    def from_edges(cls, node_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls.empty(node_count)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._m

    def label(self, v: int) -> str:
        return self._labels[v]

    def node_id(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"unknown node label {label!r}") from None

    def labels(self) -> list[str]:
        return list(self._labels)

    def neighbors(self, v: int) -> list[int]:
        """Sorted neighbor ids.  The returned list is shared; treat as read-only."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self._adj), dtype=np.int64, count=len(self._adj))

    def has_edge(self, u: int, v: int) -> bool:
        adj = self._adj[u]
        i = bisect_left(adj, v)
        return i < len(adj) and adj[i] == v

    def add_edge(self, u: int, v: int) -> None:
        """Insert the undirected edge (u, v).  Self-loops and duplicates are caller bugs."""
        n = len(self._adj)
        if not (0 <= u < n and 0 <= v < n):
            raise IndexError(f"edge ({u}, {v}) outside node range 0..{n - 1}")
        if u == v:
            raise ValueError(f"self-loop at node {u}")
        if self.has_edge(u, v):
            raise ValueError(f"edge ({u}, {v}) already present")
        insort(self._adj[u], v)
        insort(self._adj[v], u)
        self._m += 1

    def copy(self) -> "Graph":
        g = Graph.__new__(Graph)
        g._labels = list(self._labels)
        g._index = dict(self._index)
        g._adj = [list(a) for a in self._adj]
        g._m = self._m
        return g

    def edges(self) -> Iterator[tuple[int, int]]:
        """Undirected edges as (u, v) with u < v, in sorted order."""
        for u, adj in enumerate(self._adj):
            for v in adj:
                if v > u:
                    yield (u, v)

    def __getstate__(self):
        return (self._labels, self._adj, self._m)

    def __setstate__(self, state):
        self._labels, self._adj, self._m = state
        self._index = {lab: i for i, lab in enumerate(self._labels)}

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


def load_edge_list(
    lines: Iterable[str],
    *,
    delimiter: str | None = None,
    comment_prefixes: Sequence[str] = ("#", "%"),
) -> Graph:
    """Build a graph from an edge-per-line listing.

    Each non-comment line names two nodes, separated by whitespace or commas
    (or by `delimiter` when given).  Labels get dense ids in first-appearance
    order, including labels seen only on dropped lines.  Duplicate edges,
    reversed restatements, and self-loops are dropped and counted in a single
    warning.  Blank lines are skipped.

    Raises EdgeListParseError for a malformed line and ValueError when the
    input holds no edge records at all.
    """
    prefixes = tuple(comment_prefixes)
    index: dict[str, int] = {}
    labels: list[str] = []
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    dup = self_loops = records = 0

    def intern(tok: str) -> int:
        i = index.get(tok)
        if i is None:
            i = len(labels)
            index[tok] = i
            labels.append(tok)
        return i

    for line_number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(prefixes):
            continue
        toks = line.split(delimiter) if delimiter else _SPLIT.split(line)
        if len(toks) != 2:
            raise EdgeListParseError(line_number, raw)
        records += 1
        a, b = intern(toks[0]), intern(toks[1])
        if a == b:
            self_loops += 1
            continue
        key = (a, b) if a < b else (b, a)
        if key in seen:
            dup += 1
            continue
        seen.add(key)
        pairs.append(key)

    if records == 0:
        raise ValueError("edge list holds no records")
    if dup or self_loops:
        log.warning(
            "edge list: dropped %d duplicate edge(s) and %d self-loop(s)", dup, self_loops
        )
    g = Graph(labels)
    for u, v in pairs:
        g.add_edge(u, v)
    return g


def mutual_friends(g: Graph, u: int, v: int) -> int:
    """Number of common neighbors of two distinct nodes."""
    if u == v:
        raise ValueError("mutual friends of a node with itself is undefined")
    a, b = g.neighbors(u), g.neighbors(v)
    if len(a) > len(b):
        a, b = b, a
    count = i = j = 0
    # both lists sorted, single merge pass
    while i < len(a) and j < len(b):
        x, y = a[i], b[j]
        if x == y:
            count += 1
            i += 1
            j += 1
        elif x < y:
            i += 1
        else:
            j += 1
    return count


@dataclass(frozen=True, eq=False)
class DistanceField:
    """Hop distances from a source set over one graph snapshot."""

    hops: np.ndarray
    """int64 per node: hop count, or UNREACHABLE for nodes with no path."""
    sources: tuple[int, ...]

    def distance(self, v: int) -> int | None:
        d = int(self.hops[v])
        return None if d == UNREACHABLE else d

    def reachable(self, v: int) -> bool:
        return self.hops[v] != UNREACHABLE

    @property
    def reachable_mask(self) -> np.ndarray:
        return self.hops != UNREACHABLE

    def all_reachable(self) -> bool:
        return bool(np.all(self.hops != UNREACHABLE))

    def unreachable_count(self) -> int:
        return int(np.sum(self.hops == UNREACHABLE))


def _checked_sources(g: Graph, sources: Iterable[int]) -> list[int]:
    srcs = sorted({int(s) for s in sources})
    if not srcs:
        raise ValueError("source set is empty")
    if srcs[0] < 0 or srcs[-1] >= g.node_count:
        raise IndexError(f"source outside node range 0..{g.node_count - 1}")
    return srcs


def multi_source_distances(g: Graph, sources: Iterable[int]) -> DistanceField:
    """Minimum hop count from any source to every node, by a single BFS."""
    srcs = _checked_sources(g, sources)
    dist = [UNREACHABLE] * g.node_count
    queue = deque(srcs)
    for s in srcs:
        dist[s] = 0
    adj = g._adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v in adj[u]:
            if dist[v] == UNREACHABLE:
                dist[v] = du
                queue.append(v)
    return DistanceField(np.asarray(dist, dtype=np.int64), tuple(srcs))


def dijkstra_distances(g: Graph, sources: Iterable[int]) -> DistanceField:
    """Same contract as multi_source_distances via a unit-weight priority queue."""
    srcs = _checked_sources(g, sources)
    dist = [UNREACHABLE] * g.node_count
    heap: list[tuple[int, int]] = []
    for s in srcs:
        dist[s] = 0
        heappush(heap, (0, s))
    adj = g._adj
    while heap:
        du, u = heappop(heap)
        if du > dist[u]:
            continue  # stale entry
        for v in adj[u]:
            nd = du + 1
            if dist[v] == UNREACHABLE or nd < dist[v]:
                dist[v] = nd
                heappush(heap, (nd, v))
    return DistanceField(np.asarray(dist, dtype=np.int64), tuple(srcs))
