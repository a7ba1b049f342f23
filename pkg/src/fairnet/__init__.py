"""Influencer-access fairness metrics and link-recommendation simulations."""

from .centrality import InfluencerSet, betweenness, top_influencers
from .fairness import (
    BaselineFairness,
    FairnessReport,
    baseline_fairness,
    convergence_study,
    fairness_index,
    graph_fairness,
    node_fairness,
)
from .generators import barabasi_albert, erdos_renyi, matched_attachment
from .graph import (
    UNREACHABLE,
    DistanceField,
    EdgeListParseError,
    Graph,
    dijkstra_distances,
    load_edge_list,
    multi_source_distances,
    mutual_friends,
)
from .simulation import (
    CandidateSet,
    EdgeEvent,
    SimulationConfig,
    SimulationTrace,
    kl_distance,
    sample_weighted,
    simulate,
    triadic_candidates,
    weak_tie_candidates,
)

__version__ = "0.1.0"

__all__ = [
    "BaselineFairness",
    "CandidateSet",
    "DistanceField",
    "EdgeEvent",
    "EdgeListParseError",
    "FairnessReport",
    "Graph",
    "InfluencerSet",
    "SimulationConfig",
    "SimulationTrace",
    "UNREACHABLE",
    "barabasi_albert",
    "baseline_fairness",
    "betweenness",
    "convergence_study",
    "dijkstra_distances",
    "erdos_renyi",
    "fairness_index",
    "graph_fairness",
    "kl_distance",
    "load_edge_list",
    "matched_attachment",
    "multi_source_distances",
    "mutual_friends",
    "node_fairness",
    "sample_weighted",
    "simulate",
    "top_influencers",
    "triadic_candidates",
    "weak_tie_candidates",
]
