import logging
import math
from typing import Dict, List, Mapping, Tuple

import numpy as np
from scipy import sparse

from gedgm.core.exceptions import GraphValidationError, InfeasibleAssignmentError
from gedgm.core.guards import require_compatible
from gedgm.models.assignment import Assignment
from gedgm.models.cost import CostModel
from gedgm.models.graph import AttributedGraph
from gedgm.models.similarity import EdgePairKey, SimilarityModel
from gedgm.schemas.similarity import EdgeSimilarityDocument, SimilarityDocument
from gedgm.services.cost_service import compute_gamma, substitution_matrix
from gedgm.services.graph_service import check_assignment_sizes

logger = logging.getLogger(__name__)


def build_similarity(model: CostModel, g1: AttributedGraph, g2: AttributedGraph) -> SimilarityModel:
    """
    Turn edit costs into graph-matching similarities

    s'(x -> y) = -(c(x -> y) - c(x -> eps) - c(eps -> y)) for vertex and edge pairs, so
    that maximizing the matching score minimizes the edit cost up to gamma.

    Args:
        model: Edit costs
        g1: First graph
        g2: Second graph

    Returns:
        SimilarityModel; undirected instances get both orientation pairings
    """
    require_compatible(g1, g2)

    vertex_sub = substitution_matrix(model.vertex_sub, g1.vertex_matrix(), g2.vertex_matrix())
    vertex_sim = -(vertex_sub - model.vertex_del - model.vertex_ins)
    vertex_sim = vertex_sim.reshape(g1.num_vertices, g2.num_vertices)

    edge_sub = substitution_matrix(model.edge_sub, g1.edge_matrix(), g2.edge_matrix())
    edge_values = (-(edge_sub - model.edge_del - model.edge_ins)).tolist()

    edge_sim: Dict[EdgePairKey, float] = {}
    edge_images: List[Dict[Tuple[int, int], float]] = []
    for e in range(g1.num_edges):
        images: Dict[Tuple[int, int], float] = {}
        for f, (k, l) in enumerate(g2.edges):
            value = edge_values[e][f]
            edge_sim[(e, f, 0)] = value
            images[(k, l)] = value
            if not g1.directed:
                edge_sim[(e, f, 1)] = value
                images[(l, k)] = value
        edge_images.append(images)

    gamma = compute_gamma(model, g1, g2)
    logger.debug("Built similarity model %dx%d, gamma=%r", g1.num_vertices, g2.num_vertices, gamma)

    return SimilarityModel(
        vertex_sim=vertex_sim,
        edge_sim=edge_sim,
        gamma=gamma,
        directed=g1.directed,
        g1_edges=g1.edges,
        g2_edges=g2.edges,
        edge_images=tuple(edge_images),
    )


def similarity_from_tables(
    vertex_sim: np.ndarray,
    n1: int,
    n2: int,
    edge_sim: Mapping[EdgePairKey, float],
    gamma: float,
    directed: bool,
    g1_edges: Tuple[Tuple[int, int], ...],
    g2_edges: Tuple[Tuple[int, int], ...],
) -> SimilarityModel:
    """
    Rebuild a SimilarityModel from raw tables, e.g. a similarity dump
    """
    edge_images: List[Dict[Tuple[int, int], float]] = [{} for _ in g1_edges]
    for (e, f, orientation), value in edge_sim.items():
        k, l = g2_edges[f]
        edge_images[e][(k, l) if orientation == 0 else (l, k)] = value
    return SimilarityModel(
        vertex_sim=np.asarray(vertex_sim, dtype=np.float64).reshape(n1, n2),
        edge_sim=dict(edge_sim),
        gamma=gamma,
        directed=directed,
        g1_edges=tuple(g1_edges),
        g2_edges=tuple(g2_edges),
        edge_images=tuple(edge_images),
    )


def score_terms(sim: SimilarityModel, forward: Mapping[int, int]) -> List[float]:
    """Active first- and second-order terms of S''(y) for a vertex map"""
    terms = [sim.vertex_value(i, k) for i, k in sorted(forward.items())]
    for e, (i, j) in enumerate(sim.g1_edges):
        a, b = forward.get(i), forward.get(j)
        if a is None or b is None:
            continue
        value = sim.edge_images[e].get((a, b))
        if value is not None:
            terms.append(value)
    return terms


def gm_score(sim: SimilarityModel, assignment: Assignment) -> float:
    """
    Evaluate the quadratic matching score S''(y)

    Raises:
        InfeasibleAssignmentError: The assignment is not an injective partial map
    """
    if not check_assignment_sizes(assignment, sim.n1, sim.n2):
        raise InfeasibleAssignmentError(f"infeasible assignment {sorted(assignment.forward.items())}")
    return math.fsum(score_terms(sim, assignment.forward))


def ged_value_from_score(sim: SimilarityModel, score: float) -> float:
    """GED value of the assignment scoring `score`: gamma - S''"""
    return sim.gamma - score


def recover_substitution_costs(
    sim: SimilarityModel, model: CostModel
) -> Tuple[np.ndarray, Dict[EdgePairKey, float]]:
    """
    Invert the transform: c_sub = -s' + c_del + c_ins

    Returns:
        (vertex substitution matrix, edge substitution costs keyed like sim.edge_sim)
    """
    vertex_sub = -sim.vertex_sim + model.vertex_del + model.vertex_ins
    edge_sub = {key: -value + model.edge_del + model.edge_ins for key, value in sim.edge_sim.items()}
    return vertex_sub, edge_sub


def build_affinity_matrix(sim: SimilarityModel) -> sparse.csr_matrix:
    """
    Affinity matrix K with y^T K y = S''(y) for binary y

    y is the column-wise vectorization of Y: entry (i, k) sits at i + k * n1.
    Vertex similarities fill the diagonal; each edge similarity sits at
    [(i, k), (j, l)] for the endpoint mapping it rewards.
    """
    n1, n2 = sim.n1, sim.n2
    size = n1 * n2
    rows: List[int] = []
    cols: List[int] = []
    data: List[float] = []

    for i in range(n1):
        for k in range(n2):
            rows.append(i + k * n1)
            cols.append(i + k * n1)
            data.append(sim.vertex_value(i, k))

    for e, (i, j) in enumerate(sim.g1_edges):
        for (a, b), value in sim.edge_images[e].items():
            rows.append(i + a * n1)
            cols.append(j + b * n1)
            data.append(value)

    matrix = sparse.coo_matrix((data, (rows, cols)), shape=(size, size))
    return matrix.tocsr()


def similarity_to_document(sim: SimilarityModel, g1: AttributedGraph, g2: AttributedGraph) -> SimilarityDocument:
    """Similarity dump for external GM solvers: gamma plus the full s' tables"""
    return SimilarityDocument(
        gamma=sim.gamma,
        directed=sim.directed,
        vertex_ids1=list(g1.vertex_ids),
        vertex_ids2=list(g2.vertex_ids),
        vertex_sim=sim.vertex_sim.tolist(),
        g1_edges=[list(edge) for edge in sim.g1_edges],
        g2_edges=[list(edge) for edge in sim.g2_edges],
        edge_sim=[
            EdgeSimilarityDocument(e1=e1, e2=e2, orientation=orientation, value=value)
            for (e1, e2, orientation), value in sorted(sim.edge_sim.items())
        ],
    )


def similarity_from_document(
    document: SimilarityDocument, g1: AttributedGraph, g2: AttributedGraph
) -> SimilarityModel:
    """
    Load a similarity dump against the graphs it was computed for

    Raises:
        GraphValidationError: The dump does not describe this pair of graphs
    """
    require_compatible(g1, g2)
    if (
        document.directed != g1.directed
        or document.vertex_ids1 != list(g1.vertex_ids)
        or document.vertex_ids2 != list(g2.vertex_ids)
        or [tuple(edge) for edge in document.g1_edges] != list(g1.edges)
        or [tuple(edge) for edge in document.g2_edges] != list(g2.edges)
    ):
        raise GraphValidationError("Similarity dump does not match the given graphs")
    n1, n2 = g1.num_vertices, g2.num_vertices
    if len(document.vertex_sim) != n1 or any(len(row) != n2 for row in document.vertex_sim):
        raise GraphValidationError(f"Vertex similarity table must be {n1} x {n2}")

    edge_sim: Dict[EdgePairKey, float] = {}
    for entry in document.edge_sim:
        valid_orientations = (0,) if g1.directed else (0, 1)
        if not (0 <= entry.e1 < g1.num_edges and 0 <= entry.e2 < g2.num_edges) or (
            entry.orientation not in valid_orientations
        ):
            raise GraphValidationError(f"Edge similarity entry out of range: {entry.e1}, {entry.e2}")
        edge_sim[(entry.e1, entry.e2, entry.orientation)] = entry.value

    return similarity_from_tables(
        np.asarray(document.vertex_sim, dtype=np.float64),
        n1,
        n2,
        edge_sim,
        document.gamma,
        document.directed,
        g1.edges,
        g2.edges,
    )
