"""Link-recommendation simulation mixing triadic closure with weak-tie sampling.

Each visit picks a random non-influencer node and recommends one new contact
for it.  With probability triadic_prob the recommendation favors candidates
sharing many friends with the visited node (weights e^count, handled on the
log scale); otherwise it favors structurally distant, well-connected
candidates through degree^a / distance^b importance weights.  Every
recommendation is accepted, so each successful visit adds exactly one edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .centrality import InfluencerSet
from .fairness import FairnessReport, graph_fairness
from .graph import Graph, multi_source_distances

TRIADIC = "triadic"
WEAK_TIE = "weak_tie"


@dataclass(frozen=True)
class SimulationConfig:
    """Run parameters.

    triadic_prob is the mixing probability between the two recommenders.
    degree_exponent and distance_exponent shape the weak-tie weights.
    checkpoint_every <= 0 records a single checkpoint at the final visit.
    """

    n_visits: int
    triadic_prob: float
    degree_exponent: float
    distance_exponent: float
    t_percent: float = 20.0
    seed: int = 0
    checkpoint_every: int = 0

    def __post_init__(self):
        if self.n_visits < 0:
            raise ValueError("n_visits must be non-negative")
        if not 0.0 <= self.triadic_prob <= 1.0:
            raise ValueError(f"triadic_prob must lie in [0, 1], got {self.triadic_prob}")
        if self.degree_exponent < 0 or self.distance_exponent < 0:
            raise ValueError("exponents must be non-negative")
        if not 0 < self.t_percent <= 100:
            raise ValueError(f"t_percent must lie in (0, 100], got {self.t_percent}")


@dataclass(frozen=True, eq=False)
class CandidateSet:
    """Recommendation pool for one visited node.

    kind "triadic" carries log-scale weights (mutual-friend counts, since the
    linear weights are e^count); kind "weak_tie" carries linear weights.
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class EdgeEvent:
    """One accepted recommendation: which visit, which endpoints, which branch.

    fallback marks visits whose coin-chosen branch had no candidates, making
    the recorded branch the substitute.
    """

    visit: int
    source: int
    target: int
    branch: str
    fallback: bool


@dataclass(frozen=True, eq=False)
class SimulationTrace:
    added_edges: tuple[EdgeEvent, ...]
    checkpoints: tuple[tuple[int, FairnessReport], ...]
    skipped_visits: tuple[int, ...]
    final_graph: Graph


def _candidate_pool(g: Graph, source: int, members: frozenset) -> list[int]:
    # same pool for both branch kinds: non-neighbors, minus self and influencers
    blocked = set(g.neighbors(source))
    blocked.add(source)
    return [m for m in range(g.node_count) if m not in blocked and m not in members]


def _check_source(g: Graph, source: int, influencers: InfluencerSet) -> None:
    if not 0 <= source < g.node_count:
        raise IndexError(f"source {source} outside node range")
    if source in influencers:
        raise ValueError(f"source {source} is an influencer; visits cover everyone else")


def triadic_candidates(g: Graph, source: int, influencers: InfluencerSet) -> CandidateSet:
    """Candidates weighted by mutual-friend count, on the log scale."""
    _check_source(g, source, influencers)
    pool = _candidate_pool(g, source, influencers.member_set())
    mark = bytearray(g.node_count)
    for w in g.neighbors(source):
        mark[w] = 1
    counts = np.empty(len(pool))
    for i, m in enumerate(pool):
        c = 0
        for x in g.neighbors(m):
            c += mark[x]
        counts[i] = c
    return CandidateSet(TRIADIC, np.asarray(pool, dtype=np.int64), counts)


def weak_tie_candidates(
    g: Graph,
    source: int,
    influencers: InfluencerSet,
    distances,
    degree_exponent: float,
    distance_exponent: float,
) -> CandidateSet:
    """Candidates weighted degree^a / influencer-distance^b, linear scale.

    distances must be a field over the same graph snapshot, sourced at the
    influencer set.  A candidate with no path to any influencer keeps its
    plain degree weight when b == 0 (x^0 is 1) and drops to weight 0 when
    b > 0.
    """
    _check_source(g, source, influencers)
    pool = _candidate_pool(g, source, influencers.member_set())
    a, b = degree_exponent, distance_exponent
    weights = np.empty(len(pool))
    for i, m in enumerate(pool):
        deg_term = float(g.degree(m)) ** a  # 0.0 ** 0 == 1.0 covers isolated nodes at a == 0
        d = distances.distance(m)
        if d is None:
            weights[i] = deg_term if b == 0 else 0.0
        else:
            weights[i] = deg_term / float(d) ** b
    return CandidateSet(WEAK_TIE, np.asarray(pool, dtype=np.int64), weights)


def sample_weighted(candidates: CandidateSet, rng: np.random.Generator) -> int | None:
    """Draw one candidate by weight; None signals an empty set (skip the branch).

    Triadic weights are exponentiated under a max shift, so pools whose
    counts differ by hundreds still sample correctly.  A weak-tie pool whose
    weights are all zero falls back to a uniform draw over the pool.
    """
    k = len(candidates)
    if k == 0:
        return None
    if candidates.kind == TRIADIC:
        w = np.exp(candidates.weights - candidates.weights.max())
    else:
        w = candidates.weights
        if not w.sum() > 0.0:
            w = np.ones(k)
    cum = np.cumsum(w)
    r = rng.random() * cum[-1]
    idx = int(np.searchsorted(cum, r, side="right"))
    if idx >= k:  # guard the r == cum[-1] float edge
        idx = k - 1
    return int(candidates.nodes[idx])


def kl_distance(g: Graph, source: int, influencers: InfluencerSet) -> float:
    """Divergence of the triadic recommendation distribution from uniform.

    Zero exactly when every candidate has the same mutual-friend count;
    larger values mean recommendations concentrate on few candidates.
    Evaluated on the log scale throughout.
    """
    cset = triadic_candidates(g, source, influencers)
    k = len(cset)
    if k == 0:
        raise ValueError(f"node {source} has no recommendation candidates")
    lw = cset.weights
    shift = float(lw.max())
    if shift == float(lw.min()):
        return 0.0  # uniform pool, and the round trip through exp would leave noise
    lse = shift + math.log(float(np.exp(lw - shift).sum()))
    log_p = lw - lse
    return float(np.sum(np.exp(log_p) * (log_p + math.log(k))))


def _checkpoint_visits(n_visits: int, every: int) -> set[int]:
    if n_visits <= 0:
        return set()
    if every <= 0:
        return {n_visits}
    marks = {k * every for k in range(1, n_visits // every + 1)}
    marks.add(n_visits)
    return marks


def simulate(g: Graph, influencers: InfluencerSet, config: SimulationConfig) -> SimulationTrace:
    """Run the visit loop on a copy of g and trace every accepted edge.

    Visits draw uniformly (with replacement) over non-influencer nodes.
    Influencer-distance fields are recomputed from the evolving graph at
    every visit, so weak-tie weights always see the newest edges.  The
    branch coin, visit draws, and triadic draws consume one random stream
    while weak-tie draws consume a second one spawned from the same seed;
    runs with triadic_prob 1 therefore consume identical randomness no
    matter the weak-tie exponents.  A visit whose chosen branch has no
    candidates falls back to the other branch, and is skipped (but still
    counted) when both are empty.

    Checkpoint reports use connected-mode fairness when the input graph
    reaches every non-influencer from the influencer set, and stay on the
    unreachable-fraction metric for the whole run otherwise.
    """
    members = influencers.member_set()
    if members and (min(members) < 0 or max(members) >= g.node_count):
        raise IndexError("influencer ids outside node range")
    pool = [v for v in range(g.node_count) if v not in members]
    if not pool:
        raise ValueError("no nodes outside the influencer set to visit")

    control_ss, weak_ss = np.random.SeedSequence(config.seed).spawn(2)
    control = np.random.default_rng(control_ss)
    weak = np.random.default_rng(weak_ss)

    work = g.copy()
    start = multi_source_distances(work, influencers.members)
    report_mode = "auto" if all(start.reachable(v) for v in pool) else "disconnected"
    marks = _checkpoint_visits(config.n_visits, config.checkpoint_every)

    events: list[EdgeEvent] = []
    skipped: list[int] = []
    checkpoints: list[tuple[int, FairnessReport]] = []

    for visit in range(config.n_visits):
        source = pool[int(control.integers(len(pool)))]
        field = multi_source_distances(work, influencers.members)
        pick_triadic = bool(control.random() < config.triadic_prob)
        if pick_triadic:
            first = triadic_candidates(work, source, influencers)
            target = sample_weighted(first, control)
        else:
            first = weak_tie_candidates(
                work, source, influencers, field,
                config.degree_exponent, config.distance_exponent,
            )
            target = sample_weighted(first, weak)
        branch = first.kind
        fallback = False
        if target is None:
            # both branches share one pool, so this fires only to honor the
            # try-the-other-branch contract before declaring the visit dead
            if pick_triadic:
                second = weak_tie_candidates(
                    work, source, influencers, field,
                    config.degree_exponent, config.distance_exponent,
                )
                target = sample_weighted(second, weak)
            else:
                second = triadic_candidates(work, source, influencers)
                target = sample_weighted(second, control)
            branch = second.kind
            fallback = True
        if target is None:
            skipped.append(visit)
        else:
            work.add_edge(source, target)
            events.append(EdgeEvent(visit, source, target, branch, fallback))
        if (visit + 1) in marks:
            checkpoints.append(
                (visit + 1, graph_fairness(work, influencers, config.t_percent, mode=report_mode))
            )

    return SimulationTrace(tuple(events), tuple(checkpoints), tuple(skipped), work)
