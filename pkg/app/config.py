"""Configuration management using Pydantic Settings."""

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings

from app.models.genetic import GaConfig

logger = logging.getLogger(__name__)

_project_root = Path(__file__).parent.parent


class Settings(BaseSettings):
    """Application settings loaded from environment variables (``BINPACK_*``)."""

    # Storage
    checkpoint_dir: str = Field(
        default=str(_project_root / "data" / "checkpoints"),
        description="Directory for per-generation gen_<index>.pop files",
    )
    results_log: str = Field(
        default=str(_project_root / "data" / "results.log"),
        description="Append-only benchmark log, one line per solve run",
    )
    checkpoint_every_generation: bool = Field(
        default=True,
        description="Write a checkpoint after every generation",
    )

    # Logging
    log_dir: str = Field(
        default=str(_project_root / "data" / "logs"),
        description="Directory for the rotating binpack.log file",
    )
    log_level: str = Field(
        default="INFO",
        description="Console log level",
    )

    # Genetic algorithm defaults
    population_size: int = Field(
        default=100,
        ge=4,
        description="Population size Z",
    )
    elite_count: int = Field(
        default=2,
        ge=0,
        description="Elites E copied unchanged into the next generation",
    )
    prob_c: float = Field(
        default=0.1,
        ge=0.0,
        le=1.0,
        description="Probability a pair skips crossover and mutation",
    )
    mutation_prob: float = Field(
        default=0.2,
        ge=0.0,
        le=1.0,
        description="Per-offspring mutation probability",
    )
    generations: int = Field(
        default=100,
        ge=0,
        description="Generations G after the seeded population",
    )
    tournament_win_prob: float = Field(
        default=0.9,
        gt=0.5,
        le=1.0,
        description="Probability the fitter contestant wins a tournament",
    )
    early_stop: int = Field(
        default=0,
        ge=0,
        description="Stop after this many generations without improvement (0 = off)",
    )

    # Decoder
    kb: int = Field(
        default=3,
        ge=1,
        description="Boxes considered per placement step",
    )
    ke: int = Field(
        default=5,
        ge=1,
        description="Empty maximal spaces scanned per opened container",
    )

    # Execution
    workers: int = Field(
        default=1,
        ge=1,
        le=256,
        description="Evaluator processes",
    )
    seed: int = Field(
        default=0,
        ge=0,
        description="Root seed for every random stream",
    )
    oracle_limit: int = Field(
        default=50_000,
        ge=1,
        description="Largest chromosome space the exhaustive oracle will enumerate",
    )

    model_config = {
        "env_prefix": "BINPACK_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "extra": "ignore",
    }

    @field_validator("log_level")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        """Accept any case, reject unknown level names."""
        level = v.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown log level {v!r}")
        return level

    def default_ga_config(self, **overrides: Any) -> GaConfig:
        """Build a GaConfig from these settings, with optional field overrides."""
        values = {name: getattr(self, name) for name in GaConfig.model_fields}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return GaConfig(**values)


def get_settings() -> Settings:
    """Get a settings instance (environment > .env > defaults)."""
    return Settings()


def load_run_config(path: Union[str, Path]) -> Dict[str, Any]:
    """Read GaConfig overrides from a YAML mapping.

    Args:
        path: YAML file of ``field: value`` pairs

    Returns:
        Mapping of override values

    Raises:
        ValueError: If the file is not valid YAML, is not a mapping, or names
            unknown fields
    """
    with open(path, encoding="utf-8") as f:
        try:
            data: Optional[Dict[str, Any]] = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ValueError(f"{path}: invalid YAML: {e}") from None
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"{path}: run config must be a mapping")
    unknown = sorted(set(data) - set(GaConfig.model_fields))
    if unknown:
        raise ValueError(f"{path}: unknown run config keys: {', '.join(unknown)}")
    logger.debug("Loaded run config %s: %s", path, data)
    return data
