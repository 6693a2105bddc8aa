from pathlib import Path
from typing import Any, Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Get the backend directory (parent of app/)
BACKEND_DIR = Path(__file__).parent.parent.parent.resolve()
ENV_FILE = BACKEND_DIR / ".env"

# Explicitly load .env file before Settings initialization
load_dotenv(ENV_FILE)


class Settings(BaseSettings):
    # Independence testing protocol
    dcorr_threshold: float = Field(0.1, ge=0.0, le=1.0, alias="MINMCM_DCORR_THRESHOLD")
    p_threshold: float = Field(0.1, ge=0.0, le=1.0, alias="MINMCM_P_THRESHOLD")
    num_permutations: int = Field(1000, ge=1, alias="MINMCM_NUM_PERMUTATIONS")
    strict_exceedance: bool = Field(False, alias="MINMCM_STRICT_EXCEEDANCE")

    seed: int = Field(0, ge=0, alias="MINMCM_SEED")
    # joblib convention: -1 uses every core
    threads: int = Field(-1, alias="MINMCM_THREADS")

    solver_time_budget: Optional[float] = Field(None, gt=0.0, alias="MINMCM_SOLVER_TIME_BUDGET")
    solver_node_budget: Optional[int] = Field(None, ge=1, alias="MINMCM_SOLVER_NODE_BUDGET")
    brute_force_max_vertices: int = Field(10, ge=1, alias="MINMCM_BRUTE_FORCE_MAX_VERTICES")
    sensitivity_max_vertices: int = Field(12, ge=2, alias="MINMCM_SENSITIVITY_MAX_VERTICES")

    log_level: str = Field("INFO", alias="MINMCM_LOG_LEVEL")

    model_config = SettingsConfigDict(
        env_file=str(ENV_FILE),
        env_file_encoding="utf-8",
        extra="ignore",
        populate_by_name=True,
    )

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Copy with every non-None override applied; the singleton is never mutated."""
        update = {k: v for k, v in overrides.items() if v is not None}
        if not update:
            return self
        return Settings.model_validate({**self.model_dump(), **update})


settings = Settings()
