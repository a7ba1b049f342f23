"""Random-graph generators with fixed node and edge budgets."""

from __future__ import annotations

import numpy as np

from .graph import Graph


def _sample_pairs(rng: np.random.Generator, n: int, count: int) -> list[tuple[int, int]]:
    """`count` distinct unordered pairs, uniform without replacement."""
    seen: set[tuple[int, int]] = set()
    out: list[tuple[int, int]] = []
    while len(out) < count:
        need = count - len(out)
        us = rng.integers(0, n, size=2 * need + 16)
        vs = rng.integers(0, n, size=2 * need + 16)
        for u, v in zip(us.tolist(), vs.tolist()):
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            if key in seen:
                continue
            seen.add(key)
            out.append(key)
            if len(out) == count:
                break
    return out


def erdos_renyi(node_count: int, edge_count: int, seed: int) -> Graph:
    """Uniform draw over simple graphs with exactly the given node and edge counts.

    When the edge budget exceeds half of all possible pairs, the complement
    is sampled instead so the rejection loop stays cheap on dense targets.
    """
    n = int(node_count)
    total = n * (n - 1) // 2
    if not 0 <= edge_count <= total:
        raise ValueError(f"edge_count {edge_count} outside 0..{total} for {n} nodes")
    rng = np.random.default_rng(seed)
    if edge_count <= total // 2:
        chosen = _sample_pairs(rng, n, edge_count)
    else:
        excluded = set(_sample_pairs(rng, n, total - edge_count))
        chosen = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in excluded]
    return Graph.from_edges(n, chosen)


def matched_attachment(node_count: int, edge_count: int) -> int:
    """Per-arrival attachment count that best matches a target edge budget."""
    if node_count <= 0:
        raise ValueError("node_count must be positive")
    return max(1, round(edge_count / node_count))


def barabasi_albert(node_count: int, attach_count: int, seed: int) -> Graph:
    """Preferential-attachment graph grown from a star nucleus.

    The nucleus is a star on attach_count + 1 nodes, so every early node has
    nonzero degree and the graph stays connected by construction.  Each
    arriving node picks attach_count distinct targets degree-proportionally;
    repeats are redrawn, and degrees are frozen during one arrival's draws.
    """
    n, k = int(node_count), int(attach_count)
    if not 1 <= k < n:
        raise ValueError(f"attach_count must satisfy 1 <= attach_count < node_count, got {k} for {n} nodes")
    rng = np.random.default_rng(seed)
    g = Graph.empty(n)
    # endpoint multiset: picking a uniform entry is a degree-proportional pick
    endpoints: list[int] = []
    for leaf in range(1, k + 1):
        g.add_edge(0, leaf)
        endpoints += [0, leaf]
    for new in range(k + 1, n):
        targets: set[int] = set()
        while len(targets) < k:
            targets.add(endpoints[int(rng.integers(len(endpoints)))])
        for t in sorted(targets):
            g.add_edge(new, t)
            endpoints.append(new)
            endpoints.append(t)
    return g
