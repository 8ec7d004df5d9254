"""Resolution graphs of maximal singularities and their path counts."""

from .corpus import CorpusResult, check_exhaustive, check_random, enumerate_paths, random_graph
from .graph import (
    NFEvaluation,
    NFKind,
    ResolutionGraph,
    SigmaGroups,
    counting_mult_bound,
    evaluate_nf,
    format_graph,
    parse_graph,
    path_counts,
    remove_arrows,
    sigma_groups,
)

__all__ = [
    "CorpusResult",
    "NFEvaluation",
    "NFKind",
    "ResolutionGraph",
    "SigmaGroups",
    "check_exhaustive",
    "check_random",
    "counting_mult_bound",
    "enumerate_paths",
    "evaluate_nf",
    "format_graph",
    "parse_graph",
    "path_counts",
    "random_graph",
    "remove_arrows",
    "sigma_groups",
]
