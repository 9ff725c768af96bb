from dataclasses import dataclass
from enum import Enum


class DistanceType(str, Enum):
    EUCLIDEAN = "euclidean"
    CONSTANT = "constant"


@dataclass(frozen=True)
class SubstitutionCost:
    """
    Substitution cost: weight * ||a - b|| + offset for euclidean, `value` for constant
    """

    type: DistanceType = DistanceType.EUCLIDEAN
    weight: float = 1.0
    offset: float = 0.0
    value: float = 0.0

    def __post_init__(self) -> None:
        if self.weight < 0 or self.offset < 0 or self.value < 0:
            raise ValueError("substitution weight, offset and value must be >= 0")

    @classmethod
    def euclidean(cls, weight: float = 1.0, offset: float = 0.0) -> "SubstitutionCost":
        return cls(type=DistanceType.EUCLIDEAN, weight=weight, offset=offset)

    @classmethod
    def constant(cls, value: float) -> "SubstitutionCost":
        return cls(type=DistanceType.CONSTANT, value=value)


@dataclass(frozen=True)
class CostModel:
    """The six edit-operation cost functions"""

    vertex_sub: SubstitutionCost = SubstitutionCost()
    vertex_del: float = 1.0
    vertex_ins: float = 1.0
    edge_sub: SubstitutionCost = SubstitutionCost()
    edge_del: float = 1.0
    edge_ins: float = 1.0

    def __post_init__(self) -> None:
        for name in ("vertex_del", "vertex_ins", "edge_del", "edge_ins"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def is_symmetric(self) -> bool:
        return self.vertex_del == self.vertex_ins and self.edge_del == self.edge_ins

    def without_deletions(self) -> "CostModel":
        """Pure graph-matching costs: deletions and insertions are free"""
        return CostModel(
            vertex_sub=self.vertex_sub,
            vertex_del=0.0,
            vertex_ins=0.0,
            edge_sub=self.edge_sub,
            edge_del=0.0,
            edge_ins=0.0,
        )
