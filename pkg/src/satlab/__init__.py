"""Graph saturation laboratory: detection, saturated subgraphs, bounds and experiments."""

from .bounds import (
    BoundReport,
    alpha_concentration_target,
    alpha_k,
    anyg_lower,
    bound_report,
    corollary_lower_value,
    ehm_value,
    kst_lower_value,
    kt_general_upper,
    kt_star_value,
    random_upper_value,
    weight_lower_constant,
)
from .construct import (
    ConstructionError,
    LayeredParams,
    StarParams,
    kt_construction,
    layered_construction,
    star_construction,
)
from .detect import SearchBudgetExceeded, contains_copy, creates_copy, find_copy
from .formats import GraphFormatError, from_graph6, read_graph, to_graph6, write_graph
from .graph import Graph, RngSpec, VertexSet, common_neighborhood, complete_graph, edges_between, generate_random
from .harness import ExperimentConfig, TrialRecord, check_alpha_concentration, check_random_properties, compare_bounds, run_experiment
from .pattern import Pattern, PatternError, PatternSyntaxError, parse_pattern
from .saturate import ExactResult, SaturationResult, Verdict, exact_min_sat, greedy_complete, heuristic_min_sat, verify_saturated

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "ConstructionError", "ExactResult", "ExperimentConfig", "Graph",
    "GraphFormatError", "LayeredParams", "Pattern", "PatternError", "PatternSyntaxError",
    "RngSpec", "SaturationResult", "SearchBudgetExceeded", "StarParams", "TrialRecord",
    "Verdict", "VertexSet", "alpha_concentration_target", "alpha_k", "anyg_lower",
    "bound_report", "check_alpha_concentration", "check_random_properties", "common_neighborhood",
    "compare_bounds", "complete_graph", "contains_copy", "corollary_lower_value", "creates_copy",
    "edges_between", "ehm_value", "exact_min_sat", "find_copy", "from_graph6", "generate_random",
    "greedy_complete", "heuristic_min_sat", "kst_lower_value", "kt_construction",
    "kt_general_upper", "kt_star_value", "layered_construction", "parse_pattern",
    "random_upper_value", "read_graph", "star_construction", "to_graph6", "verify_saturated",
    "weight_lower_constant", "write_graph",
]
