from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Project
    PROJECT_NAME: str = "gedgm"

    # Exact solvers
    ORACLE_LIMIT: int = 8
    BNB_TIME_LIMIT: float = 60.0

    # IPFP heuristic
    IPFP_MAX_ITERS: int = 100
    IPFP_TOLERANCE: float = 1e-10

    # Reproducibility and numerics
    SEED: int = 0
    TOLERANCE: float = 1e-9

    # Equivalence experiment
    EQUIVALENCE_WORKERS: int = 4

    # Logging
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"

    class Config:
        env_file = ".env"
        env_prefix = "GEDGM_"
        case_sensitive = True
        extra = "ignore"


# Create global settings instance
settings = Settings()
