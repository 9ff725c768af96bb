from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple


class OperationKind(str, Enum):
    VERTEX_SUBSTITUTION = "vertex-substitution"
    VERTEX_DELETION = "vertex-deletion"
    VERTEX_INSERTION = "vertex-insertion"
    EDGE_SUBSTITUTION = "edge-substitution"
    EDGE_DELETION = "edge-deletion"
    EDGE_INSERTION = "edge-insertion"

    @property
    def is_vertex(self) -> bool:
        return self in (
            OperationKind.VERTEX_SUBSTITUTION,
            OperationKind.VERTEX_DELETION,
            OperationKind.VERTEX_INSERTION,
        )

    @property
    def has_source(self) -> bool:
        return self.value.endswith("substitution") or self.value.endswith("deletion")

    @property
    def has_target(self) -> bool:
        return self.value.endswith("substitution") or self.value.endswith("insertion")


@dataclass(frozen=True)
class EditOperation:
    """
    One edit operation; `source` indexes G1 and `target` indexes G2 (vertex or
    edge index depending on kind). Epsilon is encoded as None.
    """

    kind: OperationKind
    source: Optional[int] = None
    target: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind.has_source != (self.source is not None):
            raise ValueError(f"{self.kind.value} requires source operand: {self.kind.has_source}")
        if self.kind.has_target != (self.target is not None):
            raise ValueError(f"{self.kind.value} requires target operand: {self.kind.has_target}")

    @classmethod
    def vertex_substitution(cls, u: int, v: int) -> "EditOperation":
        return cls(OperationKind.VERTEX_SUBSTITUTION, u, v)

    @classmethod
    def vertex_deletion(cls, u: int) -> "EditOperation":
        return cls(OperationKind.VERTEX_DELETION, u, None)

    @classmethod
    def vertex_insertion(cls, v: int) -> "EditOperation":
        return cls(OperationKind.VERTEX_INSERTION, None, v)

    @classmethod
    def edge_substitution(cls, e: int, f: int) -> "EditOperation":
        return cls(OperationKind.EDGE_SUBSTITUTION, e, f)

    @classmethod
    def edge_deletion(cls, e: int) -> "EditOperation":
        return cls(OperationKind.EDGE_DELETION, e, None)

    @classmethod
    def edge_insertion(cls, f: int) -> "EditOperation":
        return cls(OperationKind.EDGE_INSERTION, None, f)


@dataclass
class EditPath:
    operations: Tuple[EditOperation, ...] = ()
    total_cost: Optional[float] = None

    def __len__(self) -> int:
        return len(self.operations)

    def of_kind(self, kind: OperationKind) -> List[EditOperation]:
        return [op for op in self.operations if op.kind == kind]
