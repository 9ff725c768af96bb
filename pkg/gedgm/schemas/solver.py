from typing import Any

from pydantic import BaseModel, Field

from gedgm.config.settings import settings


class SolverConfig(BaseModel):
    oracle_limit: int = Field(default=settings.ORACLE_LIMIT, gt=0)
    bnb_time_limit: float = Field(default=settings.BNB_TIME_LIMIT, gt=0)
    ipfp_max_iters: int = Field(default=settings.IPFP_MAX_ITERS, gt=0)
    ipfp_tolerance: float = Field(default=settings.IPFP_TOLERANCE, gt=0)
    seed: int = settings.SEED
    tolerance: float = Field(default=settings.TOLERANCE, gt=0)

    class Config:
        frozen = True
        extra = "forbid"

    @classmethod
    def from_overrides(cls, **overrides: Any) -> "SolverConfig":
        """Settings defaults with every non-None override applied"""
        return cls(**{key: value for key, value in overrides.items() if value is not None})
