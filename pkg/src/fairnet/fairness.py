"""Access-to-influencer fairness metrics, random-graph baselines, the fairness index."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .centrality import InfluencerSet, top_influencers
from .generators import barabasi_albert, erdos_renyi, matched_attachment
from .graph import Graph, multi_source_distances

CONNECTED = "connected"
DISCONNECTED = "disconnected"

BASELINE_MODELS = ("ba", "er")
_RETRY_CAP = 50


@dataclass(frozen=True, eq=False)
class FairnessReport:
    """Graph-level fairness summary over the nodes outside the influencer set.

    In connected mode graph_fairness holds the mean of the largest
    node-fairness values (the worst-served top t percent) and
    unreachable_fraction is None.  In disconnected mode the roles flip:
    unreachable_fraction holds the share of non-influencer nodes with no
    path to any influencer and graph_fairness is None.
    """

    mode: str
    node_distances: dict[int, int | None]
    graph_fairness: float | None
    unreachable_fraction: float | None
    t_percent: float


def node_fairness(g: Graph, influencers: InfluencerSet) -> dict[int, int | None]:
    """Hop count from each non-influencer node to its nearest influencer.

    None marks nodes with no path to any influencer.
    """
    field = multi_source_distances(g, influencers.members)
    members = influencers.member_set()
    return {v: field.distance(v) for v in range(g.node_count) if v not in members}


def graph_fairness(
    g: Graph,
    influencers: InfluencerSet,
    t_percent: float = 20.0,
    *,
    mode: str = "auto",
) -> FairnessReport:
    """Summarize node fairness into one number (or an unreachable share).

    mode="auto" picks connected reporting when every non-influencer reaches
    an influencer and disconnected reporting otherwise.  mode="disconnected"
    pins disconnected reporting; simulations on split inputs use this so a
    run keeps one metric even if added edges eventually join everything up.
    """
    if not 0 < t_percent <= 100:
        raise ValueError(f"t_percent must lie in (0, 100], got {t_percent}")
    if mode not in ("auto", DISCONNECTED):
        raise ValueError(f"mode must be 'auto' or '{DISCONNECTED}', got {mode!r}")
    per_node = node_fairness(g, influencers)
    if not per_node:
        raise ValueError("no nodes outside the influencer set")
    missing = sum(1 for d in per_node.values() if d is None)
    if missing or mode == DISCONNECTED:
        return FairnessReport(
            DISCONNECTED, per_node, None, missing / len(per_node), float(t_percent)
        )
    return FairnessReport(
        CONNECTED, per_node, _worst_tail_mean(per_node.values(), t_percent), None, float(t_percent)
    )


def _worst_tail_mean(values, t_percent: float) -> float:
    """Mean of the max(1, floor(t% of count)) largest finite values."""
    finite = sorted((v for v in values if v is not None), reverse=True)
    if not finite:
        raise ValueError("no finite distances to average")
    take = max(1, math.floor(t_percent * len(finite) / 100.0))
    return sum(finite[:take]) / take


@dataclass(frozen=True, eq=False)
class BaselineFairness:
    """Graph fairness of size-matched random graphs, averaged over seeds."""

    model: str
    mean: float
    per_seed: tuple[float, ...]
    node_count: int
    edge_target: int
    actual_edge_counts: tuple[int, ...]
    k_percent: float
    t_percent: float


def _connected(g: Graph) -> bool:
    return g.node_count > 0 and multi_source_distances(g, [0]).all_reachable()


def _derived_seed(seed: int, attempt: int) -> int:
    if attempt == 0:
        return seed
    return int(np.random.SeedSequence([seed, attempt]).generate_state(1)[0])


def baseline_fairness(
    node_count: int,
    edge_count: int,
    model: str,
    k_percent: float,
    t_percent: float,
    seeds: Sequence[int],
) -> BaselineFairness:
    """Mean graph fairness of random graphs matched to an observed size.

    "ba" grows preferential-attachment graphs whose per-arrival attachment
    count is the closest match to edge_count; these are connected by
    construction and their exact edge counts are recorded.  "er" draws
    uniform graphs with exactly edge_count edges; draws that come out
    disconnected are retried on derived seeds up to a fixed cap.  Each seed
    is evaluated independently (full influencer selection and fairness on
    its own graph) and results reduce in seed order.
    """
    model = str(model).lower()
    if model not in BASELINE_MODELS:
        raise ValueError(f"model must be one of {BASELINE_MODELS}, got {model!r}")
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise ValueError("baseline needs at least one seed")
    per_seed: list[float] = []
    actual: list[int] = []
    for s in seeds:
        if model == "ba":
            inst = barabasi_albert(node_count, matched_attachment(node_count, edge_count), s)
        else:
            inst = None
            for attempt in range(_RETRY_CAP + 1):
                cand = erdos_renyi(node_count, edge_count, _derived_seed(s, attempt))
                if _connected(cand):
                    inst = cand
                    break
            if inst is None:
                raise RuntimeError(
                    f"no connected er draw with n={node_count}, m={edge_count}, "
                    f"seed={s} within {_RETRY_CAP} retries"
                )
        report = graph_fairness(inst, top_influencers(inst, k_percent), t_percent)
        if report.mode != CONNECTED:
            raise RuntimeError(f"baseline draw unexpectedly disconnected (model={model}, seed={s})")
        per_seed.append(report.graph_fairness)
        actual.append(inst.edge_count)
    return BaselineFairness(
        model,
        sum(per_seed) / len(per_seed),
        tuple(per_seed),
        int(node_count),
        int(edge_count),
        tuple(actual),
        float(k_percent),
        float(t_percent),
    )


def fairness_index(report: FairnessReport, baseline: BaselineFairness) -> float:
    """Observed graph fairness over the baseline mean.  Lower reads as fairer.

    Defined only for connected-mode reports; disconnected inputs are tracked
    through unreachable_fraction instead.
    """
    if report.mode != CONNECTED:
        raise ValueError(
            "fairness index needs a connected-mode report; "
            "disconnected inputs are summarized by unreachable_fraction"
        )
    if not baseline.mean > 0:
        raise ValueError(f"baseline mean must be positive, got {baseline.mean}")
    return report.graph_fairness / baseline.mean


def convergence_study(
    node_count: int,
    edge_counts: Sequence[int],
    seeds_per_point: int,
    k_percent: float = 1.0,
    t_percent: float = 20.0,
) -> list[dict]:
    """Graph-fairness mean and spread per generator model across edge budgets.

    Every draw is scored as generated, without the connectivity retries the
    index baseline applies: the worst-tail average runs over the finite
    distances only, so sparse uniform draws that come out in pieces still
    contribute a value.  A draw where no node reaches the influencer set at
    all is an error.  Rows come back in fixed order (models alphabetically,
    then edge counts as given) with population standard deviation across
    seeds.
    """
    if seeds_per_point < 1:
        raise ValueError("seeds_per_point must be at least 1")
    total = node_count * (node_count - 1) // 2
    for m in edge_counts:
        if not 0 <= m <= total:
            raise ValueError(f"edge count {m} outside 0..{total} for {node_count} nodes")
    rows = []
    for model in BASELINE_MODELS:
        for m in edge_counts:
            vals = []
            for seed in range(seeds_per_point):
                if model == "ba":
                    inst = barabasi_albert(node_count, matched_attachment(node_count, m), seed)
                else:
                    inst = erdos_renyi(node_count, m, seed)
                per_node = node_fairness(inst, top_influencers(inst, k_percent))
                try:
                    vals.append(_worst_tail_mean(per_node.values(), t_percent))
                except ValueError:
                    raise RuntimeError(
                        f"no node reaches the influencers ({model}, n={node_count}, "
                        f"m={m}, seed={seed})"
                    )
            arr = np.asarray(vals)
            rows.append(
                {
                    "model": model,
                    "edge_count": int(m),
                    "mean": float(arr.mean()),
                    "std": float(arr.std()),
                    "seeds": seeds_per_point,
                }
            )
    return rows
