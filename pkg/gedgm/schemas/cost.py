from enum import Enum

from pydantic import BaseModel, Field


class DistanceKind(str, Enum):
    EUCLIDEAN = "euclidean"
    CONSTANT = "constant"


class SubstitutionDocument(BaseModel):
    type: DistanceKind = DistanceKind.EUCLIDEAN
    weight: float = Field(default=1.0, ge=0, strict=True, allow_inf_nan=False)
    offset: float = Field(default=0.0, ge=0, strict=True, allow_inf_nan=False)
    value: float = Field(default=0.0, ge=0, strict=True, allow_inf_nan=False)

    class Config:
        extra = "forbid"


class CostDocument(BaseModel):
    vertex_sub: SubstitutionDocument = SubstitutionDocument()
    vertex_del: float = Field(default=1.0, ge=0, strict=True, allow_inf_nan=False)
    vertex_ins: float = Field(default=1.0, ge=0, strict=True, allow_inf_nan=False)
    edge_sub: SubstitutionDocument = SubstitutionDocument()
    edge_del: float = Field(default=1.0, ge=0, strict=True, allow_inf_nan=False)
    edge_ins: float = Field(default=1.0, ge=0, strict=True, allow_inf_nan=False)

    class Config:
        extra = "forbid"
