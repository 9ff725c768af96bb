from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

Vector = Tuple[float, ...]
EdgeKey = Tuple[int, int]


@dataclass(frozen=True)
class AttributedGraph:
    """
    Immutable attributed graph (V, E, mu, zeta)

    Vertices are addressed by their position in `vertex_ids`; edges by their position in
    `edges`. Undirected edges are stored once with source < target.
    """

    directed: bool
    vertex_ids: Tuple[str, ...] = ()
    vertex_attrs: Tuple[Vector, ...] = ()
    edges: Tuple[EdgeKey, ...] = ()
    edge_attrs: Tuple[Vector, ...] = ()
    _edge_lookup: Dict[EdgeKey, int] = field(init=False, repr=False, compare=False)
    _incident: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        lookup: Dict[EdgeKey, int] = {}
        incident = [[] for _ in self.vertex_ids]
        for index, (source, target) in enumerate(self.edges):
            lookup[(source, target)] = index
            incident[source].append(index)
            incident[target].append(index)
        object.__setattr__(self, "_edge_lookup", lookup)
        object.__setattr__(self, "_incident", tuple(tuple(items) for items in incident))

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_ids)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_index(self, source: int, target: int) -> Optional[int]:
        """Index of the edge joining source to target, or None"""
        if not self.directed and source > target:
            source, target = target, source
        return self._edge_lookup.get((source, target))

    def incident_edges(self, vertex: int) -> Tuple[int, ...]:
        return self._incident[vertex]

    def out_edges(self, vertex: int) -> Tuple[int, ...]:
        return tuple(e for e in self._incident[vertex] if self.edges[e][0] == vertex)

    def in_edges(self, vertex: int) -> Tuple[int, ...]:
        return tuple(e for e in self._incident[vertex] if self.edges[e][1] == vertex)

    def vertex_matrix(self) -> np.ndarray:
        """Vertex attributes as an (n, d) float array"""
        return _as_matrix(self.vertex_attrs)

    def edge_matrix(self) -> np.ndarray:
        """Edge attributes as an (m, d) float array"""
        return _as_matrix(self.edge_attrs)


def _as_matrix(rows: Tuple[Vector, ...]) -> np.ndarray:
    if not rows:
        return np.zeros((0, 0), dtype=np.float64)
    return np.asarray(rows, dtype=np.float64)
