"""
Algorithm service modules
"""

from gedgm.services.graph_service import *
from gedgm.services.cost_service import *
from gedgm.services.similarity_service import *
from gedgm.services.formulation_service import *
from gedgm.services.lp_export_service import *
from gedgm.services.lsap_service import *
from gedgm.services.result_service import *
from gedgm.services.heuristic_service import *
from gedgm.services.exact_solver_service import *
from gedgm.services.experiment_service import *

__all__ = [
    # Graph services
    "parse_graph",
    "build_graph",
    "serialize_graph",
    "check_assignment",
    "count_assignments",
    "enumerate_assignments",
    "generate_random_graph",

    # Cost services
    "build_cost_tables",
    "operation_cost",
    "validate_edit_path",
    "edit_path_cost",
    "compute_gamma",
    "full_replacement_path",
    "induce_edit_path",
    "parse_cost_model",

    # Similarity services
    "build_similarity",
    "gm_score",
    "ged_value_from_score",
    "recover_substitution_costs",
    "build_affinity_matrix",
    "similarity_to_document",
    "similarity_from_document",

    # Formulation services
    "build_f1",
    "build_f2",
    "check_f2_feasible",
    "f2_objective",
    "induced_edge_selection",
    "reconstruct_full_solution",
    "build_gmm_prime",
    "gmm_feasible",
    "gmm_objective",
    "export_lp",
    "lp_sidecar",

    # Solver services
    "solve_lsap",
    "solve_oracle",
    "solve_oracle_gm",
    "solve_bnb",
    "solve_bipartite_ub",
    "solve_ipfp",
    "serialize_result",

    # Experiment services
    "generate_dataset",
    "run_equivalence",
    "report_to_csv",
    "parse_report",
]
