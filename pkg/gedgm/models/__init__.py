"""
In-memory domain models
"""
from gedgm.models.assignment import Assignment
from gedgm.models.cost import CostModel, DistanceType, SubstitutionCost
from gedgm.models.edit_path import EditOperation, EditPath, OperationKind
from gedgm.models.graph import AttributedGraph
from gedgm.models.result import SolveResult, SolveStats, SolveStatus
from gedgm.models.similarity import SimilarityModel

__all__ = [
    "Assignment",
    "AttributedGraph",
    "CostModel",
    "DistanceType",
    "EditOperation",
    "EditPath",
    "OperationKind",
    "SimilarityModel",
    "SolveResult",
    "SolveStats",
    "SolveStatus",
    "SubstitutionCost",
]
