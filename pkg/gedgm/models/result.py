from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple

from gedgm.models.assignment import Assignment
from gedgm.models.edit_path import EditPath


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    HEURISTIC = "heuristic"


@dataclass(frozen=True)
class SolveStats:
    solver: str
    nodes: int = 0
    iterations: int = 0
    wall_time: float = 0.0
    score_trace: Tuple[float, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class SolveResult:
    assignment: Assignment
    edit_path: EditPath
    ged_value: float
    gm_score: float
    gamma: float
    status: SolveStatus
    stats: SolveStats
