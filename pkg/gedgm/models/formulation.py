from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Tuple

from gedgm.models.similarity import EdgePairKey, SimilarityModel


class ConstraintFamily(str, Enum):
    VERTEX_ROW = "vertex_row"
    VERTEX_COLUMN = "vertex_column"
    EDGE_ROW = "edge_row"
    EDGE_COLUMN = "edge_column"
    HEAD = "head"
    TAIL = "tail"
    ORIENTATION = "orientation"


class Sense(str, Enum):
    LE = "<="
    EQ = "="


@dataclass(frozen=True)
class LinearConstraint:
    name: str
    family: ConstraintFamily
    terms: Tuple[Tuple[str, float], ...]
    sense: Sense
    rhs: float


@dataclass(frozen=True)
class LinearModel:
    """
    Binary linear program: minimize constant + sum(objective[v] * v)

    Variables keep insertion order, which fixes the export order.
    """

    name: str
    variables: Tuple[str, ...]
    objective: Dict[str, float]
    constant: float
    constraints: Tuple[LinearConstraint, ...]

    @property
    def variable_count(self) -> int:
        return len(self.variables)

    @property
    def constraint_count(self) -> int:
        return len(self.constraints)

    def count(self, family: ConstraintFamily) -> int:
        return sum(1 for c in self.constraints if c.family == family)


@dataclass(frozen=True)
class IlpModelF2(LinearModel):
    """
    Substitution-only ILP: y_{i,k} per vertex pair, z per edge pair and orientation

    `z_keys[name]` gives the (E1 edge, E2 edge, orientation) triple behind a z variable,
    `z_heads[name]` / `z_tails[name]` the y-variable pairs it is bounded by.
    """

    n1: int = 0
    n2: int = 0
    directed: bool = True
    y_keys: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    z_keys: Dict[str, EdgePairKey] = field(default_factory=dict)
    z_heads: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    z_tails: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    g1_edge_count: int = 0
    g2_edge_count: int = 0

    @property
    def gamma(self) -> float:
        return self.constant

    @property
    def y_vars(self) -> Tuple[str, ...]:
        return tuple(self.y_keys)

    @property
    def z_vars(self) -> Tuple[str, ...]:
        return tuple(self.z_keys)


@dataclass(frozen=True)
class QuadraticModelGmm:
    """Assignment-constrained quadratic maximization of S''(y)"""

    sim: SimilarityModel
    n1: int
    n2: int

    @property
    def variable_count(self) -> int:
        return self.n1 * self.n2

    @property
    def constraint_count(self) -> int:
        return self.n1 + self.n2


@dataclass(frozen=True)
class FullSolution:
    """Deletion/insertion flags deduced a posteriori from (y, z)"""

    a: Tuple[int, ...]
    g: Tuple[int, ...]
    b: Tuple[int, ...]
    h: Tuple[int, ...]
