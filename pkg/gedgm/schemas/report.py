from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator


class ReportRow(BaseModel):
    pair_id: str
    graph1: str
    graph2: str
    n1: int
    n2: int
    gamma: float
    exact_ged: Optional[float] = None
    derived_ged: Optional[float] = None
    excluded: bool = False
    exclusion_reason: str = ""
    bipartite_ged: Optional[float] = None
    ipfp_ged: Optional[float] = None
    bnb_time: float = 0.0
    oracle_time: float = 0.0
    bipartite_time: float = 0.0
    ipfp_time: float = 0.0

    @property
    def difference(self) -> Optional[float]:
        """exact GED - (gamma - max S'')"""
        if self.exact_ged is None or self.derived_ged is None:
            return None
        return self.exact_ged - self.derived_ged


class ExperimentReport(BaseModel):
    parameters: Dict[str, str] = {}
    rows: List[ReportRow] = []

    @property
    def included(self) -> List[ReportRow]:
        return [row for row in self.rows if not row.excluded]

    @property
    def mean_abs_difference(self) -> Optional[float]:
        rows = self.included
        if not rows:
            return None
        return sum(abs(row.difference) for row in rows) / len(rows)

    @property
    def max_abs_difference(self) -> Optional[float]:
        rows = self.included
        if not rows:
            return None
        return max(abs(row.difference) for row in rows)

    def sandwich_violations(self, tolerance: float) -> int:
        """Included rows where a heuristic reports less than the exact GED"""
        violations = 0
        for row in self.included:
            for value in (row.bipartite_ged, row.ipfp_ged):
                if value is not None and value < row.exact_ged - tolerance:
                    violations += 1
        return violations


class GeneratorParams(BaseModel):
    """Seeded random dataset description, recorded in report headers"""

    count: int = Field(default=10, ge=1)
    min_vertices: int = Field(default=3, ge=0)
    max_vertices: int = Field(default=6, ge=0)
    edge_probability: float = Field(default=0.4, ge=0.0, le=1.0)
    attr_dim: int = Field(default=2, ge=0)
    edge_attr_dim: int = Field(default=1, ge=0)
    directed: bool = False
    seed: int = 0

    class Config:
        frozen = True
        extra = "forbid"

    @model_validator(mode="after")
    def check_vertex_range(self) -> "GeneratorParams":
        if self.min_vertices > self.max_vertices:
            raise ValueError("min_vertices must not exceed max_vertices")
        return self

    def header(self) -> Dict[str, str]:
        return {key: str(value) for key, value in self.model_dump().items()}
