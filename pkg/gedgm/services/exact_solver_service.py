import logging
import math
import time
from typing import Dict, List, Optional, Tuple

import numpy as np

from gedgm.core.guards import require_compatible, require_oracle_size
from gedgm.models.assignment import Assignment
from gedgm.models.cost import CostModel
from gedgm.models.graph import AttributedGraph
from gedgm.models.result import SolveResult, SolveStats, SolveStatus
from gedgm.models.similarity import SimilarityModel
from gedgm.schemas.solver import SolverConfig
from gedgm.services.cost_service import CostTables, build_cost_tables
from gedgm.services.graph_service import enumerate_assignments
from gedgm.services.heuristic_service import solve_bipartite_ub
from gedgm.services.lsap_service import padded_cost_matrix, solve_lsap
from gedgm.services.result_service import build_gm_result, build_solve_result
from gedgm.services.similarity_service import build_similarity, score_terms

logger = logging.getLogger(__name__)


def solve_oracle(
    model: CostModel, g1: AttributedGraph, g2: AttributedGraph, cfg: SolverConfig
) -> SolveResult:
    """
    Exact GED by exhaustive minimization over all assignments

    Every edit path worth considering is induced by a vertex assignment, so the
    minimum over assignments is the edit distance. Among optima within
    cfg.tolerance the lexicographically smallest assignment wins.

    Raises:
        SizeLimitError: A graph exceeds cfg.oracle_limit
    """
    require_compatible(g1, g2)
    require_oracle_size(g1, g2, cfg.oracle_limit)
    start = time.perf_counter()
    tables = build_cost_tables(model, g1, g2)

    best: Optional[Assignment] = None
    best_cost = math.inf
    visited = 0
    for assignment in enumerate_assignments(g1, g2, limit=cfg.oracle_limit):
        visited += 1
        cost = tables.induced_cost(assignment)
        if cost < best_cost - cfg.tolerance:
            best, best_cost = assignment, cost

    stats = SolveStats(solver="oracle", nodes=visited, wall_time=time.perf_counter() - start)
    logger.info("Oracle visited %d assignments, GED=%r", visited, best_cost)
    sim = build_similarity(model, g1, g2)
    return build_solve_result(model, sim, g1, g2, best, SolveStatus.OPTIMAL, stats)


def solve_oracle_gm(
    sim: SimilarityModel, g1: AttributedGraph, g2: AttributedGraph, cfg: SolverConfig
) -> SolveResult:
    """
    Exhaustive maximization of the matching score S''(y) over the assignment set

    Raises:
        SizeLimitError: A graph exceeds cfg.oracle_limit
    """
    require_compatible(g1, g2)
    require_oracle_size(g1, g2, cfg.oracle_limit)
    start = time.perf_counter()

    best: Optional[Assignment] = None
    best_score = -math.inf
    visited = 0
    for assignment in enumerate_assignments(g1, g2, limit=cfg.oracle_limit):
        visited += 1
        score = sum(score_terms(sim, assignment.forward))
        if score > best_score + cfg.tolerance:
            best, best_score = assignment, score

    stats = SolveStats(solver="oracle-gm", nodes=visited, wall_time=time.perf_counter() - start)
    logger.info("GM oracle visited %d assignments, max score=%r", visited, best_score)
    return build_gm_result(sim, g1, g2, best, SolveStatus.OPTIMAL, stats)


class _BranchAndBound:
    """
    Depth-first search over G1 vertices in input order

    Each level sends the next G1 vertex to an unused G2 vertex or to epsilon.
    The partial cost counts every operation already fixed by the decided vertices;
    the bound adds an LSAP over vertex costs of the undecided remainder.
    """

    def __init__(self, tables: CostTables, deadline: float, tolerance: float):
        self.tables = tables
        self.g1 = tables.g1
        self.g2 = tables.g2
        self.n1 = self.g1.num_vertices
        self.n2 = self.g2.num_vertices
        self.vertex_sub = np.asarray(tables.vertex_sub, dtype=np.float64).reshape(self.n1, self.n2)
        self.vertex_del = np.asarray(tables.vertex_del, dtype=np.float64)
        self.vertex_ins = np.asarray(tables.vertex_ins, dtype=np.float64)
        self.deadline = deadline
        self.tolerance = tolerance

        self.images: List[Optional[int]] = [None] * self.n1
        self.preimage: Dict[int, int] = {}
        self.best_cost = math.inf
        self.best_key: Optional[Tuple[int, ...]] = None
        self.nodes = 0
        self.timed_out = False

    def offer(self, key: Tuple[int, ...], cost: float) -> None:
        if cost < self.best_cost - self.tolerance or (
            cost <= self.best_cost + self.tolerance and (self.best_key is None or key < self.best_key)
        ):
            self.best_cost = cost
            self.best_key = key

    def best_assignment(self) -> Assignment:
        return Assignment.from_pairs(
            (i, k) for i, k in enumerate(self.best_key) if k < self.n2
        )

    def lower_bound(self, depth: int) -> float:
        free = [k for k in range(self.n2) if k not in self.preimage]
        remaining = self.n1 - depth
        if remaining == 0:
            return float(self.vertex_ins[free].sum())
        if not free:
            return float(self.vertex_del[depth:].sum())
        matrix = padded_cost_matrix(
            self.vertex_sub[depth:][:, free], self.vertex_del[depth:], self.vertex_ins[free]
        )
        _, cost = solve_lsap(matrix)
        return cost

    def step_cost(self, d: int, t: Optional[int]) -> float:
        """Cost fixed by sending G1 vertex d to t (None = epsilon)"""
        tables, g1, g2 = self.tables, self.g1, self.g2
        cost = tables.vertex_del[d] if t is None else tables.vertex_sub[d][t]

        for e in g1.incident_edges(d):
            i, j = g1.edges[e]
            other = j if i == d else i
            if other > d:
                continue
            a = t if i == d else self.images[i]
            b = t if j == d else self.images[j]
            f = None if a is None or b is None else g2.edge_index(a, b)
            cost += tables.edge_del[e] if f is None else tables.edge_sub[e][f]

        if t is not None:
            for f in g2.incident_edges(t):
                k, l = g2.edges[f]
                other = l if k == t else k
                source = self.preimage.get(other)
                if source is None:
                    continue
                e = g1.edge_index(d, source) if k == t else g1.edge_index(source, d)
                if e is None:
                    cost += tables.edge_ins[f]
        return cost

    def completion_cost(self) -> float:
        """Insertions left once every G1 vertex is decided"""
        tables = self.tables
        cost = sum(tables.vertex_ins[k] for k in range(self.n2) if k not in self.preimage)
        for f, (k, l) in enumerate(self.g2.edges):
            if k not in self.preimage or l not in self.preimage:
                cost += tables.edge_ins[f]
        return cost

    def search(self, depth: int, partial: float) -> None:
        self.nodes += 1
        if self.timed_out or time.perf_counter() > self.deadline:
            self.timed_out = True
            return

        if depth == self.n1:
            key = tuple(self.n2 if k is None else k for k in self.images)
            self.offer(key, partial + self.completion_cost())
            return

        if partial + self.lower_bound(depth) > self.best_cost + self.tolerance:
            return

        children = []
        for t in [k for k in range(self.n2) if k not in self.preimage] + [None]:
            children.append((self.step_cost(depth, t), t is None, -1 if t is None else t, t))
        children.sort(key=lambda child: child[:3])

        for step, _, _, t in children:
            if self.timed_out:
                return
            if partial + step > self.best_cost + self.tolerance:
                continue
            self.images[depth] = t
            if t is not None:
                self.preimage[t] = depth
            self.search(depth + 1, partial + step)
            if t is not None:
                del self.preimage[t]
            self.images[depth] = None


def solve_bnb(
    model: CostModel, g1: AttributedGraph, g2: AttributedGraph, cfg: SolverConfig
) -> SolveResult:
    """
    Exact GED by branch and bound, seeded with the bipartite upper bound

    Returns an optimal result when the search finishes within cfg.bnb_time_limit,
    otherwise the best incumbent with heuristic status.
    """
    require_compatible(g1, g2)
    start = time.perf_counter()
    deadline = start + cfg.bnb_time_limit
    tables = build_cost_tables(model, g1, g2)

    search = _BranchAndBound(tables, deadline, cfg.tolerance)
    incumbent = solve_bipartite_ub(model, g1, g2, cfg).assignment
    search.offer(incumbent.key(g1.num_vertices, g2.num_vertices), tables.induced_cost(incumbent))
    search.search(0, 0.0)

    status = SolveStatus.HEURISTIC if search.timed_out else SolveStatus.OPTIMAL
    if search.timed_out:
        logger.warning("Branch and bound hit the %.3gs time limit after %d nodes", cfg.bnb_time_limit, search.nodes)
    stats = SolveStats(solver="bnb", nodes=search.nodes, wall_time=time.perf_counter() - start)
    logger.info("Branch and bound expanded %d nodes, GED=%r (%s)", search.nodes, search.best_cost, status.value)

    sim = build_similarity(model, g1, g2)
    return build_solve_result(model, sim, g1, g2, search.best_assignment(), status, stats)
