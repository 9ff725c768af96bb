from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np


@dataclass(frozen=True)
class Assignment:
    """
    Injective partial vertex map G1 -> G2 (sparse form of the 0/1 matrix Y)

    `forward` and `backward` are built independently from the pairs so that a
    non-injective input stays detectable by `check_assignment`.
    """

    forward: Mapping[int, int] = field(default_factory=dict)
    backward: Mapping[int, int] = field(default_factory=dict)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "Assignment":
        forward: Dict[int, int] = {}
        backward: Dict[int, int] = {}
        for source, target in pairs:
            forward[source] = target
            backward[target] = source
        return cls(forward=forward, backward=backward)

    @classmethod
    def empty(cls) -> "Assignment":
        return cls()

    def pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(self.forward.items()))

    def key(self, n1: int, n2: int) -> Tuple[int, ...]:
        """Lexicographic order key: image index per G1 vertex, epsilon sorts last"""
        return tuple(self.forward.get(i, n2) for i in range(n1))

    def to_matrix(self, n1: int, n2: int) -> np.ndarray:
        matrix = np.zeros((n1, n2), dtype=np.float64)
        for source, target in self.forward.items():
            matrix[source, target] = 1.0
        return matrix

    def __len__(self) -> int:
        return len(self.forward)

    def __hash__(self) -> int:
        return hash(self.pairs())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return dict(self.forward) == dict(other.forward) and dict(self.backward) == dict(other.backward)
