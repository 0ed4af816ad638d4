from pydantic import Field, field_validator
from pydantic_settings import BaseSettings

from src.utils.env_loader import load_environment_variables

# Load environment variables first
load_environment_variables()


class _ToolkitSettings(BaseSettings):
    """Numerical tolerances and desk-scale limits.

    This is the one place the floating-point defaults live: the series
    cutoff of the matrix exponential and the acceptance threshold of the
    Ad/exp residual check. Everything exact ignores them.
    """

    series_tol: float = Field(default=1e-15, alias="SERIES_TOL")
    acceptance_tol: float = Field(default=1e-8, alias="ACCEPTANCE_TOL")

    # Seed for randomized property checks
    random_seed: int = Field(default=20240607, alias="RANDOM_SEED")

    # Largest algebra dimension accepted from files
    max_dim: int = Field(default=10, alias="MAX_DIM")

    @field_validator("series_tol", "acceptance_tol")
    def validate_tolerance(cls, value):
        if not value > 0:
            raise ValueError("Tolerances must be positive")
        return value

    @field_validator("max_dim")
    def validate_max_dim(cls, value):
        if value < 1:
            raise ValueError("MAX_DIM must be at least 1")
        return value

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "extra": "ignore",
    }


# Create a singleton instance
ToolkitSettings = _ToolkitSettings()
