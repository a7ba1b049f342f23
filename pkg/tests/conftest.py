"""Shared test helpers: independent oracles and graph invariant checks."""

from collections import deque

import numpy as np

from fairnet import Graph, erdos_renyi


def check_graph_invariants(g: Graph) -> None:
    """Storage-level consistency: simple, symmetric, sorted, counted, labeled."""
    n = g.node_count
    seen_pairs = set()
    half_edges = 0
    for u in range(n):
        adj = g.neighbors(u)
        assert adj == sorted(adj), f"adjacency of {u} not sorted"
        assert len(set(adj)) == len(adj), f"adjacency of {u} repeats a neighbor"
        assert u not in adj, f"self-loop at {u}"
        for v in adj:
            assert 0 <= v < n
            assert u in g.neighbors(v), f"edge ({u},{v}) not symmetric"
            seen_pairs.add((min(u, v), max(u, v)))
        half_edges += len(adj)
    assert half_edges == 2 * g.edge_count
    assert len(seen_pairs) == g.edge_count
    for u in range(n):
        assert g.node_id(g.label(u)) == u


def bfs_single(g: Graph, source: int) -> list:
    """Plain textbook single-source BFS; independent of the library's traversal."""
    dist = [None] * g.node_count
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for v in g.neighbors(u):
            if dist[v] is None:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def min_combined_distances(g: Graph, sources) -> list:
    """Per-source BFS, then pointwise minimum. None where nothing reaches."""
    fields = [bfs_single(g, s) for s in sources]
    out = []
    for v in range(g.node_count):
        vals = [f[v] for f in fields if f[v] is not None]
        out.append(min(vals) if vals else None)
    return out


def brute_betweenness(g: Graph) -> np.ndarray:
    """Betweenness by direct path counting per (s, t) pair.

    sigma[s][v] and dist[s][v] come from per-source BFS; the share of s-t
    paths through v is sigma[s][v] * sigma[v][t] / sigma[s][t] whenever v
    sits on a shortest path, by the counting identity.  Each unordered pair
    is visited once.
    """
    n = g.node_count
    INF = np.iinfo(np.int64).max // 4
    dist = np.full((n, n), INF, dtype=np.int64)
    sigma = np.zeros((n, n))
    for s in range(n):
        order = []
        dist[s, s] = 0
        sigma[s, s] = 1.0
        q = deque([s])
        while q:
            u = q.popleft()
            order.append(u)
            for v in g.neighbors(u):
                if dist[s, v] == INF:
                    dist[s, v] = dist[s, u] + 1
                    q.append(v)
        # path counts in BFS level order
        for u in order:
            for v in g.neighbors(u):
                if dist[s, v] == dist[s, u] + 1:
                    sigma[s, v] += sigma[s, u]
    score = np.zeros(n)
    for s in range(n):
        for t in range(s + 1, n):
            if dist[s, t] >= INF:
                continue
            st = sigma[s, t]
            for v in range(n):
                if v == s or v == t:
                    continue
                if dist[s, v] + dist[v, t] == dist[s, t]:
                    score[v] += sigma[s, v] * sigma[v, t] / st
    return score


def random_test_graph(seed: int, max_n: int = 50) -> Graph:
    """Deterministic mixed-density instance for oracle duels."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, max_n + 1))
    total = n * (n - 1) // 2
    m = int(rng.integers(0, total + 1)) if total else 0
    # bias toward sparse so disconnected cases show up often
    if rng.random() < 0.5:
        m = min(m, 2 * n)
    return erdos_renyi(n, m, int(rng.integers(0, 2**32)))
