from typing import Annotated, List

from pydantic import BaseModel, Field, StrictBool, StrictStr

# Strict: numeric strings and booleans are rejected, JSON integers are accepted
FiniteFloat = Annotated[float, Field(strict=True, allow_inf_nan=False)]


class VertexDocument(BaseModel):
    id: StrictStr
    attrs: List[FiniteFloat] = []

    class Config:
        extra = "forbid"


class EdgeDocument(BaseModel):
    source: StrictStr
    target: StrictStr
    attrs: List[FiniteFloat] = []

    class Config:
        extra = "forbid"


class GraphDocument(BaseModel):
    directed: StrictBool = False
    vertices: List[VertexDocument] = []
    edges: List[EdgeDocument] = []

    class Config:
        extra = "forbid"
