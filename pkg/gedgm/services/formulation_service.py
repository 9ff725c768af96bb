import logging
import math
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from gedgm.core.exceptions import InfeasibleAssignmentError
from gedgm.core.guards import require_compatible
from gedgm.models.assignment import Assignment
from gedgm.models.cost import CostModel
from gedgm.models.formulation import (
    ConstraintFamily,
    FullSolution,
    IlpModelF2,
    LinearConstraint,
    LinearModel,
    QuadraticModelGmm,
    Sense,
)
from gedgm.models.graph import AttributedGraph
from gedgm.models.similarity import EdgePairKey, SimilarityModel
from gedgm.services.cost_service import substitution_matrix
from gedgm.services.graph_service import check_assignment_sizes
from gedgm.services.similarity_service import build_similarity, gm_score

logger = logging.getLogger(__name__)


def y_name(i: int, k: int) -> str:
    return f"y_{i}_{k}"


def z_name(i: int, j: int, k: int, l: int) -> str:
    """z variable sending u_i to v_k and u_j to v_l"""
    return f"z_{i}_{j}_{k}_{l}"


def _edge_pairings(
    g1: AttributedGraph, g2: AttributedGraph
) -> List[Tuple[EdgePairKey, Tuple[int, int], Tuple[int, int]]]:
    """
    Every (E1 edge, E2 edge, orientation) with the y pairs bounding it: head (i, k), tail (j, l)
    """
    pairings = []
    for e, (i, j) in enumerate(g1.edges):
        for f, (k, l) in enumerate(g2.edges):
            pairings.append(((e, f, 0), (i, k), (j, l)))
            if not g1.directed:
                pairings.append(((e, f, 1), (i, l), (j, k)))
    return pairings


def _matching_rows(
    n1: int, n2: int, sense: Sense, slack: Optional[Dict[str, str]] = None
) -> List[LinearConstraint]:
    rows = []
    for i in range(n1):
        terms = [(y_name(i, k), 1.0) for k in range(n2)]
        if slack is not None:
            terms.append((slack[f"row_{i}"], 1.0))
        rows.append(LinearConstraint(f"row_{i}", ConstraintFamily.VERTEX_ROW, tuple(terms), sense, 1.0))
    for k in range(n2):
        terms = [(y_name(i, k), 1.0) for i in range(n1)]
        if slack is not None:
            terms.append((slack[f"col_{k}"], 1.0))
        rows.append(LinearConstraint(f"col_{k}", ConstraintFamily.VERTEX_COLUMN, tuple(terms), sense, 1.0))
    return rows


def build_f2(model: CostModel, g1: AttributedGraph, g2: AttributedGraph) -> IlpModelF2:
    """
    Build the substitution-only ILP

    Objective: gamma + sum d(u_i -> v_k) y_ik + sum d(e -> f) z, with d = c_sub - c_del - c_ins.
    Topological rows group the z variables of each G1 edge by the G2 vertex its
    head (resp. tail) lands on; a group is only written when it is non-empty.
    Undirected instances get two z variables per edge pair plus an orientation row.
    """
    require_compatible(g1, g2)
    sim = build_similarity(model, g1, g2)
    n1, n2 = g1.num_vertices, g2.num_vertices

    variables: List[str] = []
    objective: Dict[str, float] = {}
    y_keys: Dict[str, Tuple[int, int]] = {}
    for i in range(n1):
        for k in range(n2):
            name = y_name(i, k)
            variables.append(name)
            objective[name] = -sim.vertex_value(i, k)
            y_keys[name] = (i, k)

    z_keys: Dict[str, EdgePairKey] = {}
    z_heads: Dict[str, Tuple[int, int]] = {}
    z_tails: Dict[str, Tuple[int, int]] = {}
    for key, head, tail in _edge_pairings(g1, g2):
        name = z_name(head[0], tail[0], head[1], tail[1])
        variables.append(name)
        objective[name] = -sim.edge_sim[key]
        z_keys[name] = key
        z_heads[name] = head
        z_tails[name] = tail

    constraints = _matching_rows(n1, n2, Sense.LE)
    constraints += _topological_rows(g1, n2, z_keys, z_heads, ConstraintFamily.HEAD)
    constraints += _topological_rows(g1, n2, z_keys, z_tails, ConstraintFamily.TAIL)
    if not g1.directed:
        constraints += _orientation_rows(g1, g2, z_keys)

    f2 = IlpModelF2(
        name="F2",
        variables=tuple(variables),
        objective=objective,
        constant=sim.gamma,
        constraints=tuple(constraints),
        n1=n1,
        n2=n2,
        directed=g1.directed,
        y_keys=y_keys,
        z_keys=z_keys,
        z_heads=z_heads,
        z_tails=z_tails,
        g1_edge_count=g1.num_edges,
        g2_edge_count=g2.num_edges,
    )
    logger.debug(
        "Built F2: %d variables, %d constraints, gamma=%r", f2.variable_count, f2.constraint_count, f2.gamma
    )
    return f2


def _topological_rows(
    g1: AttributedGraph,
    n2: int,
    z_keys: Mapping[str, EdgePairKey],
    bounds: Mapping[str, Tuple[int, int]],
    family: ConstraintFamily,
) -> List[LinearConstraint]:
    grouped: Dict[Tuple[int, int], List[str]] = {}
    for name, (e, _, _) in z_keys.items():
        vertex = bounds[name][1]
        grouped.setdefault((e, vertex), []).append(name)

    rows = []
    for e, (i, j) in enumerate(g1.edges):
        endpoint = i if family == ConstraintFamily.HEAD else j
        for vertex in range(n2):
            names = grouped.get((e, vertex))
            if not names:
                continue
            terms = tuple((name, 1.0) for name in names) + ((y_name(endpoint, vertex), -1.0),)
            rows.append(LinearConstraint(f"{family.value}_{i}_{j}_{vertex}", family, terms, Sense.LE, 0.0))
    return rows


def _orientation_rows(
    g1: AttributedGraph, g2: AttributedGraph, z_keys: Mapping[str, EdgePairKey]
) -> List[LinearConstraint]:
    by_pair: Dict[Tuple[int, int], List[str]] = {}
    for name, (e, f, _) in z_keys.items():
        by_pair.setdefault((e, f), []).append(name)

    rows = []
    for (e, f), names in by_pair.items():
        i, j = g1.edges[e]
        k, l = g2.edges[f]
        terms = tuple((name, 1.0) for name in names)
        rows.append(
            LinearConstraint(f"orient_{i}_{j}_{k}_{l}", ConstraintFamily.ORIENTATION, terms, Sense.LE, 1.0)
        )
    return rows


def build_f1(model: CostModel, g1: AttributedGraph, g2: AttributedGraph) -> LinearModel:
    """
    Build the straightforward ILP with explicit deletion (a, b) and insertion (g, h) variables

    Every element is either substituted or deleted/inserted (equality rows) and an
    edge pair may only be substituted when its head and tail vertices are.
    """
    require_compatible(g1, g2)
    n1, n2 = g1.num_vertices, g2.num_vertices
    vertex_sub = substitution_matrix(model.vertex_sub, g1.vertex_matrix(), g2.vertex_matrix())
    edge_sub = substitution_matrix(model.edge_sub, g1.edge_matrix(), g2.edge_matrix())

    variables: List[str] = []
    objective: Dict[str, float] = {}

    def add(name: str, cost: float) -> None:
        variables.append(name)
        objective[name] = float(cost)

    for i in range(n1):
        for k in range(n2):
            add(y_name(i, k), vertex_sub[i, k])

    z_of_e1: Dict[int, List[str]] = {}
    z_of_e2: Dict[int, List[str]] = {}
    constraints: List[LinearConstraint] = []
    topology: List[LinearConstraint] = []
    for (e, f, _), head, tail in _edge_pairings(g1, g2):
        name = z_name(head[0], tail[0], head[1], tail[1])
        add(name, edge_sub[e, f])
        z_of_e1.setdefault(e, []).append(name)
        z_of_e2.setdefault(f, []).append(name)
        topology.append(
            LinearConstraint(
                f"head_{name}", ConstraintFamily.HEAD, ((name, 1.0), (y_name(*head), -1.0)), Sense.LE, 0.0
            )
        )
        topology.append(
            LinearConstraint(
                f"tail_{name}", ConstraintFamily.TAIL, ((name, 1.0), (y_name(*tail), -1.0)), Sense.LE, 0.0
            )
        )

    slack: Dict[str, str] = {}
    for i in range(n1):
        slack[f"row_{i}"] = f"a_{i}"
        add(f"a_{i}", model.vertex_del)
    for k in range(n2):
        slack[f"col_{k}"] = f"g_{k}"
        add(f"g_{k}", model.vertex_ins)
    constraints += _matching_rows(n1, n2, Sense.EQ, slack)

    for e, (i, j) in enumerate(g1.edges):
        name = f"b_{i}_{j}"
        add(name, model.edge_del)
        terms = tuple((z, 1.0) for z in z_of_e1.get(e, [])) + ((name, 1.0),)
        constraints.append(LinearConstraint(f"erow_{i}_{j}", ConstraintFamily.EDGE_ROW, terms, Sense.EQ, 1.0))
    for f, (k, l) in enumerate(g2.edges):
        name = f"h_{k}_{l}"
        add(name, model.edge_ins)
        terms = tuple((z, 1.0) for z in z_of_e2.get(f, [])) + ((name, 1.0),)
        constraints.append(
            LinearConstraint(f"ecol_{k}_{l}", ConstraintFamily.EDGE_COLUMN, terms, Sense.EQ, 1.0)
        )

    return LinearModel(
        name="F1",
        variables=tuple(variables),
        objective=objective,
        constant=0.0,
        constraints=tuple(constraints + topology),
    )


def linear_objective(model: LinearModel, values: Mapping[str, int]) -> float:
    """constant + sum of objective coefficients over the variables set to 1"""
    return math.fsum([model.constant] + [model.objective[name] * values.get(name, 0) for name in model.variables])


def linear_feasible(model: LinearModel, values: Mapping[str, int]) -> bool:
    """True iff every row of the model holds for the given 0/1 values"""
    for constraint in model.constraints:
        lhs = sum(coefficient * values.get(name, 0) for name, coefficient in constraint.terms)
        if constraint.sense == Sense.LE and lhs > constraint.rhs:
            return False
        if constraint.sense == Sense.EQ and lhs != constraint.rhs:
            return False
    return True


def _values(model: IlpModelF2, y: Assignment, z: Iterable[str]) -> Dict[str, int]:
    values = {y_name(i, k): 1 for i, k in y.forward.items()}
    values.update({name: 1 for name in z})
    return values


def f2_objective(model: IlpModelF2, y: Assignment, z: Iterable[str]) -> float:
    """C'(y, z) including the constant gamma"""
    return linear_objective(model, _values(model, y, z))


def induced_edge_selection(model: IlpModelF2, y: Assignment) -> FrozenSet[str]:
    """z variables switched on by the vertex map alone"""
    forward = y.forward
    return frozenset(
        name
        for name in model.z_keys
        if forward.get(model.z_heads[name][0]) == model.z_heads[name][1]
        and forward.get(model.z_tails[name][0]) == model.z_tails[name][1]
    )


def check_f2_feasible(model: IlpModelF2, y: Assignment, z: Iterable[str]) -> bool:
    """
    Check a 0/1 point against the matching and topological rows of F2

    The grouped rows are cross-checked against the pairwise form z <= y_head, z <= y_tail.
    """
    z = set(z)
    if any(name not in model.z_keys for name in z):
        return False
    if not check_assignment_sizes(y, model.n1, model.n2):
        return False

    values = _values(model, y, z)
    grouped = linear_feasible(model, values)
    pairwise = all(
        y.forward.get(model.z_heads[name][0]) == model.z_heads[name][1]
        and y.forward.get(model.z_tails[name][0]) == model.z_tails[name][1]
        for name in z
    )
    if grouped != pairwise:
        logger.warning("Grouped and pairwise topological rows disagree for z=%s", sorted(z))
    return grouped and pairwise


def reconstruct_full_solution(model: IlpModelF2, y: Assignment, z: Iterable[str]) -> FullSolution:
    """
    Deduce the deletion and insertion flags a, g, b, h from (y, z)

    Raises:
        InfeasibleAssignmentError: (y, z) is not feasible for the model
    """
    z = set(z)
    if not check_f2_feasible(model, y, z):
        raise InfeasibleAssignmentError("cannot reconstruct an infeasible F2 point")

    e1_used = [0] * model.g1_edge_count
    e2_used = [0] * model.g2_edge_count
    for name in z:
        e, f, _ = model.z_keys[name]
        e1_used[e] += 1
        e2_used[f] += 1

    return FullSolution(
        a=tuple(0 if i in y.forward else 1 for i in range(model.n1)),
        g=tuple(0 if k in y.backward else 1 for k in range(model.n2)),
        b=tuple(1 - used for used in e1_used),
        h=tuple(1 - used for used in e2_used),
    )


def build_gmm_prime(sim: SimilarityModel, g1: AttributedGraph, g2: AttributedGraph) -> QuadraticModelGmm:
    """
    Quadratic model: maximize S''(y) subject to the two matching row families only
    """
    require_compatible(g1, g2)
    return QuadraticModelGmm(sim=sim, n1=g1.num_vertices, n2=g2.num_vertices)


def gmm_feasible(model: QuadraticModelGmm, y: Assignment) -> bool:
    return check_assignment_sizes(y, model.n1, model.n2)


def gmm_objective(model: QuadraticModelGmm, y: Assignment) -> float:
    return gm_score(model.sim, y)
