from typing import List, Optional

from pydantic import BaseModel


class AssignmentPairDocument(BaseModel):
    source: int
    target: int
    source_id: str
    target_id: str


class EditOperationDocument(BaseModel):
    kind: str
    source: Optional[int] = None
    target: Optional[int] = None
    cost: Optional[float] = None


class SolveStatsDocument(BaseModel):
    solver: str
    nodes: int = 0
    iterations: int = 0
    wall_time: float = 0.0
    score_trace: List[float] = []


class SolveResultDocument(BaseModel):
    status: str
    ged_value: float
    gm_score: float
    gamma: float
    assignment: List[AssignmentPairDocument]
    edit_path: List[EditOperationDocument]
    edit_path_cost: Optional[float] = None
    stats: SolveStatsDocument
