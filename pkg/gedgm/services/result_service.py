import math
from typing import Optional

from gedgm.models.assignment import Assignment
from gedgm.models.cost import CostModel
from gedgm.models.graph import AttributedGraph
from gedgm.models.result import SolveResult, SolveStats, SolveStatus
from gedgm.models.similarity import SimilarityModel
from gedgm.schemas.result import (
    AssignmentPairDocument,
    EditOperationDocument,
    SolveResultDocument,
    SolveStatsDocument,
)
from gedgm.services.cost_service import edit_path_cost, induce_edit_path, operation_cost
from gedgm.services.similarity_service import gm_score


def build_solve_result(
    model: CostModel,
    sim: SimilarityModel,
    g1: AttributedGraph,
    g2: AttributedGraph,
    assignment: Assignment,
    status: SolveStatus,
    stats: SolveStats,
) -> SolveResult:
    """
    Package an assignment found by a cost-driven solver

    The GED value is the cost of the induced edit path, so two solvers returning
    the same assignment report bit-identical values.
    """
    path = induce_edit_path(assignment, g1, g2)
    ged_value = edit_path_cost(model, path, g1, g2)
    return SolveResult(
        assignment=assignment,
        edit_path=path,
        ged_value=ged_value,
        gm_score=gm_score(sim, assignment),
        gamma=sim.gamma,
        status=status,
        stats=stats,
    )


def build_gm_result(
    sim: SimilarityModel,
    g1: AttributedGraph,
    g2: AttributedGraph,
    assignment: Assignment,
    status: SolveStatus,
    stats: SolveStats,
) -> SolveResult:
    """
    Package an assignment found by a similarity-driven solver: ged_value = gamma - S''
    """
    path = induce_edit_path(assignment, g1, g2)
    score = gm_score(sim, assignment)
    path.total_cost = sim.gamma - score
    return SolveResult(
        assignment=assignment,
        edit_path=path,
        ged_value=sim.gamma - score,
        gm_score=score,
        gamma=sim.gamma,
        status=status,
        stats=stats,
    )


def serialize_result(
    result: SolveResult, model: Optional[CostModel], g1: AttributedGraph, g2: AttributedGraph
) -> SolveResultDocument:
    """
    Result document; per-operation costs are only filled in when edit costs are known
    """
    operations = [
        EditOperationDocument(
            kind=op.kind.value,
            source=op.source,
            target=op.target,
            cost=None if model is None else operation_cost(model, op, g1, g2),
        )
        for op in result.edit_path.operations
    ]
    return SolveResultDocument(
        status=result.status.value,
        ged_value=result.ged_value,
        gm_score=result.gm_score,
        gamma=result.gamma,
        assignment=[
            AssignmentPairDocument(
                source=i, target=k, source_id=g1.vertex_ids[i], target_id=g2.vertex_ids[k]
            )
            for i, k in result.assignment.pairs()
        ],
        edit_path=operations,
        edit_path_cost=None if model is None else math.fsum(op.cost for op in operations),
        stats=SolveStatsDocument(
            solver=result.stats.solver,
            nodes=result.stats.nodes,
            iterations=result.stats.iterations,
            wall_time=result.stats.wall_time,
            score_trace=list(result.stats.score_trace),
        ),
    )
