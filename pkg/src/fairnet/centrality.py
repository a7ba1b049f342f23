"""Betweenness centrality and selection of the top-scoring node subset."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph


@dataclass(frozen=True, eq=False)
class InfluencerSet:
    """Nodes singled out as influencers, plus how they were chosen.

    members are ascending node ids.  k_percent and scores are None for sets
    given by hand instead of computed from centrality.
    """

    members: tuple[int, ...]
    k_percent: float | None = None
    scores: np.ndarray | None = None
    _member_set: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_member_set", frozenset(self.members))

    def __contains__(self, v: int) -> bool:
        return v in self._member_set

    def __len__(self) -> int:
        return len(self.members)

    def member_set(self) -> frozenset:
        return self._member_set


def _directed_edge_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    m2 = 2 * g.edge_count
    src = np.empty(m2, dtype=np.int64)
    dst = np.empty(m2, dtype=np.int64)
    pos = 0
    for u in range(g.node_count):
        nbrs = g.neighbors(u)
        k = len(nbrs)
        src[pos : pos + k] = u
        dst[pos : pos + k] = nbrs
        pos += k
    return src, dst


def betweenness(g: Graph) -> np.ndarray:
    """Shortest-path betweenness of every node.

    Each unordered node pair (s, t) contributes once: the fraction of
    shortest s-t paths running through v, summed over all pairs with
    s != v != t.  Scores are raw sums, not normalized.  Computed by
    level-synchronous path counting from every source followed by the
    usual reverse dependency accumulation; the edge-array formulation
    keeps the per-level work in numpy.
    """
    n = g.node_count
    score = np.zeros(n)
    if n == 0 or g.edge_count == 0:
        return score
    src, dst = _directed_edge_arrays(g)
    for s in range(n):
        dist = np.full(n, -1, dtype=np.int64)
        dist[s] = 0
        sigma = np.zeros(n)
        sigma[s] = 1.0
        level = 0
        while True:
            on_frontier = dist[src] == level
            if not on_frontier.any():
                break
            f_src = src[on_frontier]
            f_dst = dst[on_frontier]
            fresh = dist[f_dst] == -1
            if fresh.any():
                dist[f_dst[fresh]] = level + 1
            forward = dist[f_dst] == level + 1
            np.add.at(sigma, f_dst[forward], sigma[f_src[forward]])
            level += 1
        delta = np.zeros(n)
        for lev in range(level - 1, -1, -1):
            step = (dist[src] == lev) & (dist[dst] == lev + 1)
            if step.any():
                np.add.at(
                    delta,
                    src[step],
                    sigma[src[step]] / sigma[dst[step]] * (1.0 + delta[dst[step]]),
                )
        # the source's own accumulated dependency is not a pair-interior share
        delta[s] = 0.0
        score += delta
    return score / 2.0


def top_influencers(g: Graph, k_percent: float = 1.0, scores: np.ndarray | None = None) -> InfluencerSet:
    """The ceil(k% of n) highest-betweenness nodes, at least one.

    Ties at the cutoff break toward the lower node id, so the selection is
    deterministic for a given graph.
    """
    if not 0 < k_percent <= 100:
        raise ValueError(f"k_percent must lie in (0, 100], got {k_percent}")
    n = g.node_count
    if n == 0:
        raise ValueError("cannot pick influencers from an empty graph")
    if scores is None:
        scores = betweenness(g)
    size = max(1, math.ceil(k_percent * n / 100.0))
    order = np.lexsort((np.arange(n), -scores))
    members = tuple(sorted(int(v) for v in order[:size]))
    return InfluencerSet(members, float(k_percent), scores)
