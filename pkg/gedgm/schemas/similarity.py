from typing import List, Tuple

from pydantic import BaseModel, StrictBool, StrictInt

from gedgm.schemas.graph import FiniteFloat


class EdgeSimilarityDocument(BaseModel):
    e1: StrictInt
    e2: StrictInt
    orientation: StrictInt
    value: FiniteFloat


class SimilarityDocument(BaseModel):
    gamma: FiniteFloat
    directed: StrictBool
    vertex_ids1: List[str]
    vertex_ids2: List[str]
    vertex_sim: List[List[FiniteFloat]]
    g1_edges: List[Tuple[int, int]]
    g2_edges: List[Tuple[int, int]]
    edge_sim: List[EdgeSimilarityDocument]
