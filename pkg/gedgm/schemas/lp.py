from pydantic import BaseModel


class LpSidecarDocument(BaseModel):
    model: str
    gamma: float
    variable_count: int
    constraint_count: int
