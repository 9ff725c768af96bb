import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from pydantic import ValidationError
from scipy.spatial.distance import cdist

from gedgm.core.exceptions import CostConfigError, EditPathError, GraphValidationError
from gedgm.core.guards import require_compatible, require_feasible
from gedgm.models.assignment import Assignment
from gedgm.models.cost import CostModel, DistanceType, SubstitutionCost
from gedgm.models.edit_path import EditOperation, EditPath, OperationKind
from gedgm.models.graph import AttributedGraph
from gedgm.schemas.cost import CostDocument, DistanceKind, SubstitutionDocument

logger = logging.getLogger(__name__)


def substitution_matrix(rule: SubstitutionCost, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """
    Pairwise substitution costs between two attribute matrices

    Args:
        rule: Substitution cost rule
        left: (n, d) attributes of G1 elements
        right: (m, d) attributes of G2 elements

    Returns:
        (n, m) cost matrix
    """
    n, m = left.shape[0], right.shape[0]
    if rule.type == DistanceType.CONSTANT:
        return np.full((n, m), rule.value, dtype=np.float64)
    if n == 0 or m == 0:
        return np.zeros((n, m), dtype=np.float64)
    if left.shape[1] != right.shape[1]:
        raise GraphValidationError(
            f"attribute length mismatch: {left.shape[1]} vs {right.shape[1]}"
        )
    if left.shape[1] == 0:
        return np.full((n, m), rule.offset, dtype=np.float64)
    return rule.weight * cdist(left, right, metric="euclidean") + rule.offset


@dataclass(frozen=True)
class CostTables:
    """
    Every per-element cost of an instance, precomputed as plain lists
    """

    g1: AttributedGraph
    g2: AttributedGraph
    vertex_sub: List[List[float]]
    vertex_del: List[float]
    vertex_ins: List[float]
    edge_sub: List[List[float]]
    edge_del: List[float]
    edge_ins: List[float]

    def induced_cost(self, assignment: Assignment) -> float:
        """
        Cost of the edit path induced by an assignment, without building the path
        """
        forward = assignment.forward
        g1, g2 = self.g1, self.g2
        total = 0.0

        for i in range(g1.num_vertices):
            k = forward.get(i)
            total += self.vertex_del[i] if k is None else self.vertex_sub[i][k]
        for k in range(g2.num_vertices):
            if k not in assignment.backward:
                total += self.vertex_ins[k]

        substituted = set()
        for e, (i, j) in enumerate(g1.edges):
            a, b = forward.get(i), forward.get(j)
            f = None if a is None or b is None else g2.edge_index(a, b)
            if f is None:
                total += self.edge_del[e]
            else:
                total += self.edge_sub[e][f]
                substituted.add(f)
        for f in range(g2.num_edges):
            if f not in substituted:
                total += self.edge_ins[f]
        return total


def build_cost_tables(model: CostModel, g1: AttributedGraph, g2: AttributedGraph) -> CostTables:
    require_compatible(g1, g2)
    return CostTables(
        g1=g1,
        g2=g2,
        vertex_sub=substitution_matrix(model.vertex_sub, g1.vertex_matrix(), g2.vertex_matrix()).tolist(),
        vertex_del=[model.vertex_del] * g1.num_vertices,
        vertex_ins=[model.vertex_ins] * g2.num_vertices,
        edge_sub=substitution_matrix(model.edge_sub, g1.edge_matrix(), g2.edge_matrix()).tolist(),
        edge_del=[model.edge_del] * g1.num_edges,
        edge_ins=[model.edge_ins] * g2.num_edges,
    )


def operation_cost(
    model: CostModel, operation: EditOperation, g1: AttributedGraph, g2: AttributedGraph
) -> float:
    """
    Cost c(o) of a single edit operation

    Raises:
        EditPathError: An operand index is out of range
    """
    kind = operation.kind
    if kind.is_vertex:
        left_size, right_size = g1.num_vertices, g2.num_vertices
    else:
        left_size, right_size = g1.num_edges, g2.num_edges
    _require_index(operation.source, left_size, "G1", kind)
    _require_index(operation.target, right_size, "G2", kind)

    if kind == OperationKind.VERTEX_SUBSTITUTION:
        return _pair_cost(
            model.vertex_sub, g1.vertex_attrs[operation.source], g2.vertex_attrs[operation.target]
        )
    if kind == OperationKind.VERTEX_DELETION:
        return model.vertex_del
    if kind == OperationKind.VERTEX_INSERTION:
        return model.vertex_ins
    if kind == OperationKind.EDGE_SUBSTITUTION:
        return _pair_cost(
            model.edge_sub, g1.edge_attrs[operation.source], g2.edge_attrs[operation.target]
        )
    if kind == OperationKind.EDGE_DELETION:
        return model.edge_del
    return model.edge_ins


def _require_index(index: Optional[int], size: int, graph: str, kind: OperationKind) -> None:
    if index is not None and not 0 <= index < size:
        raise EditPathError(f"{kind.value} operand {index} out of range for {graph} (size {size})")


def _pair_cost(rule: SubstitutionCost, left: Sequence[float], right: Sequence[float]) -> float:
    matrix = substitution_matrix(
        rule,
        np.asarray([left], dtype=np.float64),
        np.asarray([right], dtype=np.float64),
    )
    return float(matrix[0, 0])


def validate_edit_path(path: EditPath, g1: AttributedGraph, g2: AttributedGraph) -> None:
    """
    Check that a path edits every element exactly once and that edge substitutions
    follow their vertex substitutions

    Raises:
        EditPathError: The path is not a complete, topologically valid edit path
    """
    touched = {
        "v1": [0] * g1.num_vertices,
        "v2": [0] * g2.num_vertices,
        "e1": [0] * g1.num_edges,
        "e2": [0] * g2.num_edges,
    }
    vertex_map = {}
    edge_pairs = []

    for op in path.operations:
        left, right = ("v1", "v2") if op.kind.is_vertex else ("e1", "e2")
        for slot, index in ((left, op.source), (right, op.target)):
            if index is None:
                continue
            if not 0 <= index < len(touched[slot]):
                raise EditPathError(f"{op.kind.value} operand {index} out of range")
            touched[slot][index] += 1
        if op.kind == OperationKind.VERTEX_SUBSTITUTION:
            vertex_map[op.source] = op.target
        elif op.kind == OperationKind.EDGE_SUBSTITUTION:
            edge_pairs.append((op.source, op.target))

    for slot, counts in touched.items():
        for index, count in enumerate(counts):
            if count != 1:
                raise EditPathError(f"element {index} of {slot} is edited {count} times, expected once")

    for e, f in edge_pairs:
        i, j = g1.edges[e]
        image = (vertex_map.get(i), vertex_map.get(j))
        k, l = g2.edges[f]
        if image == (k, l) or (not g1.directed and image == (l, k)):
            continue
        raise EditPathError(f"edge substitution {e}->{f} does not follow the vertex substitutions")


def edit_path_cost(model: CostModel, path: EditPath, g1: AttributedGraph, g2: AttributedGraph) -> float:
    """
    Total cost of an edit path; the result is also stored in path.total_cost
    """
    validate_edit_path(path, g1, g2)
    total = math.fsum(operation_cost(model, op, g1, g2) for op in path.operations)
    path.total_cost = total
    return total


def compute_gamma(model: CostModel, g1: AttributedGraph, g2: AttributedGraph) -> float:
    """
    Cost of deleting all of G1 and inserting all of G2
    """
    return math.fsum(
        [model.vertex_del] * g1.num_vertices
        + [model.vertex_ins] * g2.num_vertices
        + [model.edge_del] * g1.num_edges
        + [model.edge_ins] * g2.num_edges
    )


def full_replacement_path(g1: AttributedGraph, g2: AttributedGraph) -> EditPath:
    operations = (
        [EditOperation.vertex_deletion(i) for i in range(g1.num_vertices)]
        + [EditOperation.vertex_insertion(k) for k in range(g2.num_vertices)]
        + [EditOperation.edge_deletion(e) for e in range(g1.num_edges)]
        + [EditOperation.edge_insertion(f) for f in range(g2.num_edges)]
    )
    return EditPath(operations=tuple(operations))


def induce_edit_path(assignment: Assignment, g1: AttributedGraph, g2: AttributedGraph) -> EditPath:
    """
    Build the unique edit path a vertex assignment determines

    Edge operations follow the vertex map: an edge whose endpoints both land on the
    endpoints of a G2 edge is substituted, any other G1 edge is deleted, and every
    G2 edge left unmatched is inserted.

    Raises:
        InfeasibleAssignmentError: The assignment is not an injective partial map
    """
    require_compatible(g1, g2)
    require_feasible(assignment, g1, g2)
    forward = assignment.forward
    operations: List[EditOperation] = []

    for i in range(g1.num_vertices):
        k = forward.get(i)
        if k is None:
            operations.append(EditOperation.vertex_deletion(i))
        else:
            operations.append(EditOperation.vertex_substitution(i, k))
    for k in range(g2.num_vertices):
        if k not in assignment.backward:
            operations.append(EditOperation.vertex_insertion(k))

    substituted = set()
    for e, (i, j) in enumerate(g1.edges):
        a, b = forward.get(i), forward.get(j)
        f = None if a is None or b is None else g2.edge_index(a, b)
        if f is None:
            operations.append(EditOperation.edge_deletion(e))
        else:
            operations.append(EditOperation.edge_substitution(e, f))
            substituted.add(f)
    for f in range(g2.num_edges):
        if f not in substituted:
            operations.append(EditOperation.edge_insertion(f))

    return EditPath(operations=tuple(operations))


def parse_cost_model(text: str) -> CostModel:
    """
    Parse a cost configuration document

    Raises:
        CostConfigError: Malformed JSON, unknown keys, or negative/non-finite costs
    """
    try:
        document = CostDocument.model_validate_json(text)
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise CostConfigError(f"Invalid cost document: {first['msg']} (field '{field}')") from exc
    return cost_model_from_document(document)


def cost_model_from_document(document: CostDocument) -> CostModel:
    def substitution(rule: SubstitutionDocument) -> SubstitutionCost:
        return SubstitutionCost(
            type=DistanceType(rule.type.value), weight=rule.weight, offset=rule.offset, value=rule.value
        )

    return CostModel(
        vertex_sub=substitution(document.vertex_sub),
        vertex_del=document.vertex_del,
        vertex_ins=document.vertex_ins,
        edge_sub=substitution(document.edge_sub),
        edge_del=document.edge_del,
        edge_ins=document.edge_ins,
    )


def cost_model_to_document(model: CostModel) -> CostDocument:
    def substitution(rule: SubstitutionCost) -> SubstitutionDocument:
        return SubstitutionDocument(
            type=DistanceKind(rule.type.value), weight=rule.weight, offset=rule.offset, value=rule.value
        )

    return CostDocument(
        vertex_sub=substitution(model.vertex_sub),
        vertex_del=model.vertex_del,
        vertex_ins=model.vertex_ins,
        edge_sub=substitution(model.edge_sub),
        edge_del=model.edge_del,
        edge_ins=model.edge_ins,
    )
