"""Community-aware network immunization: influence measures, stochastic
baselines, an SIR Monte-Carlo evaluation pipeline, and a synthetic
benchmark generator."""

__version__ = "0.1.0"

from .centrality import (
    Ranking,
    ScoreMap,
    betweenness_scores,
    comm_measure,
    comm_scores,
    community_hub_bridge,
    community_hub_bridge_scores,
    degree_scores,
    neighboring_communities,
    neighboring_communities_scores,
    rank,
    weighted_community_hub_bridge,
    weighted_community_hub_bridge_scores,
)
from .community import (
    CommunityStats,
    community_stats,
    estimate_mixing,
    interconnection_density,
    interconnection_densities,
    load_partition,
    louvain,
    louvain_with_history,
    modularity,
    save_partition,
)
from .epidemic import (
    SirConfig,
    SirOutcome,
    SirRun,
    coverage_count,
    immunize,
    ranking_prefix,
    relative_difference,
    separation_z,
    sir_ensemble,
    sir_run,
)
from .errors import BudgetError, DataError, FeasibilityError
from .graphs import (
    EdgeListReport,
    Graph,
    Partition,
    degree,
    inter_degree,
    intra_degree,
    intra_inter_degrees,
    load_edge_list,
    write_edge_list,
)
from .lfr import (
    LfrParams,
    generate,
    sample_truncated_power_law,
    solve_min_degree,
    truncated_power_law_mean,
)
from .stochastic import acquaintance, bhd, cbf
