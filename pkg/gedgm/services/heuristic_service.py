import logging
import time
from typing import List, Optional, Sequence

import numpy as np
from scipy import sparse

from gedgm.core.guards import require_compatible, require_feasible
from gedgm.models.assignment import Assignment
from gedgm.models.cost import CostModel
from gedgm.models.graph import AttributedGraph
from gedgm.models.result import SolveResult, SolveStats, SolveStatus
from gedgm.models.similarity import SimilarityModel
from gedgm.schemas.solver import SolverConfig
from gedgm.services.cost_service import substitution_matrix
from gedgm.services.lsap_service import (
    assignment_from_permutation,
    maximize_padded,
    padded_cost_matrix,
    solve_lsap,
)
from gedgm.services.result_service import build_gm_result, build_solve_result
from gedgm.services.similarity_service import build_affinity_matrix, build_similarity, gm_score

logger = logging.getLogger(__name__)


def _local_edge_cost(
    edge_sub: np.ndarray,
    left: Sequence[int],
    right: Sequence[int],
    edge_del: float,
    edge_ins: float,
) -> float:
    if not left and not right:
        return 0.0
    if left and right:
        block = edge_sub[np.ix_(list(left), list(right))]
    else:
        block = np.zeros((len(left), len(right)))
    matrix = padded_cost_matrix(
        block,
        [edge_del] * len(left),
        [edge_ins] * len(right),
    )
    _, cost = solve_lsap(matrix)
    return cost


def bipartite_cost_matrix(model: CostModel, g1: AttributedGraph, g2: AttributedGraph) -> np.ndarray:
    """
    (n1 + n2) square LSAP matrix for the bipartite upper bound

    Substitution entries add half the optimal matching cost of the two vertices'
    incident edges (out/in edges separately when directed); deletion and insertion
    entries add half the cost of removing or creating the incident edges.
    """
    n1, n2 = g1.num_vertices, g2.num_vertices
    vertex_sub = substitution_matrix(model.vertex_sub, g1.vertex_matrix(), g2.vertex_matrix())
    edge_sub = substitution_matrix(model.edge_sub, g1.edge_matrix(), g2.edge_matrix())

    if g1.directed:
        sides = [(g1.out_edges, g2.out_edges), (g1.in_edges, g2.in_edges)]
    else:
        sides = [(g1.incident_edges, g2.incident_edges)]

    augmented = np.array(vertex_sub, dtype=np.float64).reshape(n1, n2)
    for i in range(n1):
        for k in range(n2):
            edge_cost = sum(
                _local_edge_cost(edge_sub, left(i), right(k), model.edge_del, model.edge_ins)
                for left, right in sides
            )
            augmented[i, k] += 0.5 * edge_cost

    deletion = [model.vertex_del + 0.5 * model.edge_del * len(g1.incident_edges(i)) for i in range(n1)]
    insertion = [model.vertex_ins + 0.5 * model.edge_ins * len(g2.incident_edges(k)) for k in range(n2)]
    return padded_cost_matrix(augmented, deletion, insertion)


def solve_bipartite_ub(
    model: CostModel, g1: AttributedGraph, g2: AttributedGraph, cfg: SolverConfig
) -> SolveResult:
    """
    Upper bound on GED from one LSAP over vertex costs augmented with local edge costs

    The LSAP's vertex map induces a complete edit path, so the reported value is
    the cost of a real edit path and never below the optimum.
    """
    require_compatible(g1, g2)
    start = time.perf_counter()
    matrix = bipartite_cost_matrix(model, g1, g2)
    permutation, _ = solve_lsap(matrix)
    assignment = assignment_from_permutation(permutation, g1.num_vertices, g2.num_vertices)

    stats = SolveStats(solver="bipartite", iterations=1, wall_time=time.perf_counter() - start)
    sim = build_similarity(model, g1, g2)
    result = build_solve_result(model, sim, g1, g2, assignment, SolveStatus.HEURISTIC, stats)
    logger.info("Bipartite upper bound GED=%r", result.ged_value)
    return result


def _vectorize(matrix: np.ndarray) -> np.ndarray:
    """Column-wise vectorization matching the affinity matrix layout"""
    return matrix.flatten(order="F")


def _better(sim: SimilarityModel, candidate: Assignment, incumbent: Optional[Assignment]) -> bool:
    if incumbent is None:
        return True
    candidate_score, incumbent_score = gm_score(sim, candidate), gm_score(sim, incumbent)
    if candidate_score != incumbent_score:
        return candidate_score > incumbent_score
    return candidate.key(sim.n1, sim.n2) < incumbent.key(sim.n1, sim.n2)


def solve_ipfp(
    sim: SimilarityModel,
    g1: AttributedGraph,
    g2: AttributedGraph,
    cfg: SolverConfig,
    warm_start: Optional[Assignment] = None,
) -> SolveResult:
    """
    Frank-Wolfe style maximization of S''(y) on the relaxed assignment polytope

    Each iteration linearizes S'' at the current point, takes the best vertex of
    the polytope for that linearization (LSAP with epsilon rows/columns scoring 0)
    and line-searches the exact 1-D quadratic along the segment. The relaxed score
    never decreases. The final point is projected back to an assignment by one
    more LSAP; the best discrete point met on the way is kept if it scores higher.

    Args:
        sim: Transformed similarities
        g1: First graph
        g2: Second graph
        cfg: Iteration cap and improvement tolerance
        warm_start: Starting assignment; barycenter of the polytope when omitted
    """
    require_compatible(g1, g2)
    start = time.perf_counter()
    n1, n2 = sim.n1, sim.n2

    if n1 == 0 or n2 == 0:
        stats = SolveStats(solver="ipfp", wall_time=time.perf_counter() - start, score_trace=(0.0,))
        return build_gm_result(sim, g1, g2, Assignment.empty(), SolveStatus.HEURISTIC, stats)

    affinity = build_affinity_matrix(sim)
    linear = affinity.diagonal()
    off_diagonal = affinity - sparse.diags(linear)
    quadratic = ((off_diagonal + off_diagonal.T) * 0.5).tocsr()

    def relaxed_score(x: np.ndarray) -> float:
        return float(linear @ x + x @ (quadratic @ x))

    if warm_start is not None:
        require_feasible(warm_start, g1, g2)
        x = _vectorize(warm_start.to_matrix(n1, n2))
    else:
        x = np.full(n1 * n2, 1.0 / max(n1, n2))

    trace: List[float] = [relaxed_score(x)]
    best_discrete: Optional[Assignment] = None
    iterations = 0

    for iterations in range(1, cfg.ipfp_max_iters + 1):
        gradient = linear + 2.0 * (quadratic @ x)
        target = maximize_padded(gradient.reshape((n1, n2), order="F"))
        if _better(sim, target, best_discrete):
            best_discrete = target

        direction = _vectorize(target.to_matrix(n1, n2)) - x
        slope = float(gradient @ direction)
        curvature = float(direction @ (quadratic @ direction))
        if curvature < 0:
            step = min(1.0, max(0.0, -slope / (2.0 * curvature)))
        else:
            step = 1.0 if slope + curvature > 0 else 0.0

        gain = step * slope + step * step * curvature
        logger.debug("IPFP iteration %d: score=%r step=%r gain=%r", iterations, trace[-1], step, gain)
        if gain < cfg.ipfp_tolerance:
            break
        candidate = x + step * direction
        candidate_score = relaxed_score(candidate)
        if candidate_score < trace[-1]:
            break
        x = candidate
        trace.append(candidate_score)

    projected = maximize_padded(x.reshape((n1, n2), order="F"))
    final = projected if _better(sim, projected, best_discrete) else best_discrete

    stats = SolveStats(
        solver="ipfp",
        iterations=iterations,
        wall_time=time.perf_counter() - start,
        score_trace=tuple(trace),
    )
    result = build_gm_result(sim, g1, g2, final, SolveStatus.HEURISTIC, stats)
    logger.info("IPFP finished after %d iterations, score=%r GED=%r", iterations, result.gm_score, result.ged_value)
    return result
