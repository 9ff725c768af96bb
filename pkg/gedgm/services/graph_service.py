import json
import logging
from math import comb, factorial
from typing import Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx
import numpy as np
from pydantic import ValidationError

from gedgm.config.settings import settings
from gedgm.core.exceptions import GraphParseError, GraphValidationError, SizeLimitError
from gedgm.models.assignment import Assignment
from gedgm.models.graph import AttributedGraph
from gedgm.schemas.graph import EdgeDocument, GraphDocument, VertexDocument

logger = logging.getLogger(__name__)


def parse_graph(text: str) -> AttributedGraph:
    """
    Parse and validate a graph document

    Args:
        text: JSON graph document

    Returns:
        Validated graph, undirected edges canonicalized to source < target

    Raises:
        GraphParseError: Malformed JSON or schema violation
        GraphValidationError: Duplicate id, bad endpoint, self-loop, parallel edge
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"Malformed graph document: {exc.msg}", line=exc.lineno) from exc

    try:
        document = GraphDocument.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        field = ".".join(str(part) for part in first["loc"])
        raise GraphParseError(f"Invalid graph document: {first['msg']}", field=field) from exc

    return build_graph(document)


def build_graph(document: GraphDocument) -> AttributedGraph:
    """
    Turn a schema-valid document into an AttributedGraph, enforcing graph invariants
    """
    index: Dict[str, int] = {}
    for position, vertex in enumerate(document.vertices):
        if vertex.id in index:
            raise GraphValidationError(f"duplicate vertex id '{vertex.id}'")
        index[vertex.id] = position

    _require_uniform_length([v.attrs for v in document.vertices], "vertex")
    _require_uniform_length([e.attrs for e in document.edges], "edge")

    edges: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()
    for position, edge in enumerate(document.edges):
        for endpoint in (edge.source, edge.target):
            if endpoint not in index:
                raise GraphValidationError(f"bad endpoint '{endpoint}' in edge {position}")
        source, target = index[edge.source], index[edge.target]
        if source == target:
            raise GraphValidationError(f"self-loop on vertex '{edge.source}' in edge {position}")
        if not document.directed and source > target:
            source, target = target, source
        if (source, target) in seen:
            raise GraphValidationError(
                f"parallel edge between '{edge.source}' and '{edge.target}' in edge {position}"
            )
        seen.add((source, target))
        edges.append((source, target))

    return AttributedGraph(
        directed=document.directed,
        vertex_ids=tuple(v.id for v in document.vertices),
        vertex_attrs=tuple(tuple(v.attrs) for v in document.vertices),
        edges=tuple(edges),
        edge_attrs=tuple(tuple(e.attrs) for e in document.edges),
    )


def _require_uniform_length(vectors: List[List[float]], what: str) -> None:
    lengths = {len(vector) for vector in vectors}
    if len(lengths) > 1:
        raise GraphValidationError(f"{what} attribute vectors have mixed lengths {sorted(lengths)}")


def serialize_graph(graph: AttributedGraph) -> str:
    """
    Serialize a graph to its JSON document form
    """
    document = GraphDocument(
        directed=graph.directed,
        vertices=[
            VertexDocument(id=vertex_id, attrs=list(attrs))
            for vertex_id, attrs in zip(graph.vertex_ids, graph.vertex_attrs)
        ],
        edges=[
            EdgeDocument(
                source=graph.vertex_ids[source],
                target=graph.vertex_ids[target],
                attrs=list(attrs),
            )
            for (source, target), attrs in zip(graph.edges, graph.edge_attrs)
        ],
    )
    return document.model_dump_json(indent=2)


def check_assignment(assignment: Assignment, g1: AttributedGraph, g2: AttributedGraph) -> bool:
    """
    Check ranges and two-way injectivity of an assignment

    Returns:
        True iff the assignment is a feasible partial matching; never raises
    """
    return check_assignment_sizes(assignment, g1.num_vertices, g2.num_vertices)


def check_assignment_sizes(assignment: Assignment, n1: int, n2: int) -> bool:
    """Same check as check_assignment, against bare vertex counts"""
    forward, backward = assignment.forward, assignment.backward

    if len(forward) != len(backward):
        return False
    for source, target in forward.items():
        if not (0 <= source < n1 and 0 <= target < n2):
            return False
        if backward.get(target) != source:
            return False
    return True


def count_assignments(n1: int, n2: int) -> int:
    """Number of injective partial maps between vertex sets of size n1 and n2"""
    return sum(comb(n1, k) * comb(n2, k) * factorial(k) for k in range(min(n1, n2) + 1))


def enumerate_assignments(
    g1: AttributedGraph, g2: AttributedGraph, limit: Optional[int] = None
) -> Iterator[Assignment]:
    """
    Enumerate every injective partial map V1 -> V2 exactly once

    Assignments come out in lexicographic key order (lowest G2 index first,
    epsilon last), so the first optimum met is the lexicographically smallest.

    Args:
        g1: First graph
        g2: Second graph
        limit: Maximum vertex count per graph; defaults to settings.ORACLE_LIMIT

    Raises:
        SizeLimitError: A graph exceeds the limit
    """
    if limit is None:
        limit = settings.ORACLE_LIMIT
    n1, n2 = g1.num_vertices, g2.num_vertices
    if n1 > limit or n2 > limit:
        raise SizeLimitError(f"enumeration needs at most {limit} vertices per graph, got {n1} and {n2}")
    return _walk_assignments(n1, n2)


def _walk_assignments(n1: int, n2: int) -> Iterator[Assignment]:
    images: List[Optional[int]] = [None] * n1
    used = [False] * n2

    def recurse(i: int) -> Iterator[Assignment]:
        if i == n1:
            yield Assignment.from_pairs((u, v) for u, v in enumerate(images) if v is not None)
            return
        for v in range(n2):
            if used[v]:
                continue
            used[v] = True
            images[i] = v
            yield from recurse(i + 1)
            used[v] = False
        images[i] = None
        yield from recurse(i + 1)

    return recurse(0)


def generate_random_graph(
    num_vertices: int,
    edge_probability: float,
    rng: np.random.Generator,
    attr_dim: int = 2,
    edge_attr_dim: int = 1,
    directed: bool = False,
) -> AttributedGraph:
    """
    Erdos-Renyi topology with uniform [0, 1) vertex and edge attributes

    Args:
        num_vertices: Vertex count
        edge_probability: Probability of each (ordered, if directed) vertex pair being an edge
        rng: Seeded numpy generator; the only source of randomness
        attr_dim: Vertex attribute length
        edge_attr_dim: Edge attribute length
        directed: Whether to draw a directed graph
    """
    topology = nx.gnp_random_graph(
        num_vertices, edge_probability, seed=int(rng.integers(2**31 - 1)), directed=directed
    )
    if directed:
        edges = sorted(topology.edges())
    else:
        edges = sorted((min(u, v), max(u, v)) for u, v in topology.edges())

    vertex_attrs = rng.uniform(0.0, 1.0, size=(num_vertices, attr_dim))
    edge_attrs = rng.uniform(0.0, 1.0, size=(len(edges), edge_attr_dim))
    logger.debug("Generated graph with %d vertices and %d edges", num_vertices, len(edges))

    return AttributedGraph(
        directed=directed,
        vertex_ids=tuple(f"v{i}" for i in range(num_vertices)),
        vertex_attrs=tuple(tuple(float(x) for x in row) for row in vertex_attrs),
        edges=tuple((int(u), int(v)) for u, v in edges),
        edge_attrs=tuple(tuple(float(x) for x in row) for row in edge_attrs),
    )
