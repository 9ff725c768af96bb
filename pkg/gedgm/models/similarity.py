from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

# (E1 edge index, E2 edge index, orientation); orientation 0 maps source->source,
# orientation 1 maps source->target (undirected graphs only)
EdgePairKey = Tuple[int, int, int]


@dataclass(frozen=True)
class SimilarityModel:
    """
    Transformed similarities s' and the constant gamma

    `edge_images[e]` maps an ordered G2 vertex pair (a, b) to the s' earned when the
    endpoints of G1 edge e are sent to a and b respectively.
    """

    vertex_sim: np.ndarray
    edge_sim: Dict[EdgePairKey, float]
    gamma: float
    directed: bool
    g1_edges: Tuple[Tuple[int, int], ...] = ()
    g2_edges: Tuple[Tuple[int, int], ...] = ()
    edge_images: Tuple[Dict[Tuple[int, int], float], ...] = field(default=(), repr=False)
    _vertex_rows: List[List[float]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_vertex_rows", self.vertex_sim.tolist())

    @property
    def n1(self) -> int:
        return int(self.vertex_sim.shape[0])

    @property
    def n2(self) -> int:
        return int(self.vertex_sim.shape[1])

    def vertex_value(self, i: int, k: int) -> float:
        return self._vertex_rows[i][k]
