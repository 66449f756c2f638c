"""Toolkit configuration loaded from config.yaml and environment variables."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Any, Literal

import yaml
from pydantic import BaseModel, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

PROJECT_ROOT = Path(__file__).resolve().parent.parent
CONFIG_YAML_PATH = PROJECT_ROOT / "config.yaml"


# --- YAML sub-models ---


class OracleConfig(BaseModel):
    """Brute-force enumeration limits."""

    enumeration_budget: int = Field(default=10_000_000, gt=0)


class HardnessConfig(BaseModel):
    """Vertex Cover validation limits."""

    vertex_cover_budget: int = Field(default=20, ge=0)


class SearchConfig(BaseModel):
    """Randomized no-instance search parameters."""

    max_vertices: int = Field(default=6, ge=3)
    max_arcs: int = Field(default=12, ge=1)
    max_label: int = Field(default=4, ge=1)
    attempts: int = Field(default=5000, gt=0)


# --- Main settings ---


class Settings(BaseSettings):
    """Settings combining TEMPO_ARB_* environment variables and config.yaml values."""

    env: str = Field(default="prod")
    log_format: Literal["text", "json"] = Field(default="text")
    budget: int | None = Field(default=None, gt=0)

    # YAML-sourced config
    oracle: OracleConfig = Field(default_factory=OracleConfig)
    hardness: HardnessConfig = Field(default_factory=HardnessConfig)
    search: SearchConfig = Field(default_factory=SearchConfig)

    model_config = SettingsConfigDict(
        env_prefix="TEMPO_ARB_",
        env_file=str(PROJECT_ROOT / ".env"),
        env_file_encoding="utf-8",
        extra="ignore",
    )

    def __init__(self, **kwargs: Any) -> None:
        yaml_data = _load_yaml_config()
        merged = {**yaml_data, **kwargs}
        super().__init__(**merged)

    @property
    def effective_enumeration_budget(self) -> int:
        """Return the TEMPO_ARB_BUDGET override, falling back to config.yaml."""
        return self.budget or self.oracle.enumeration_budget


def _load_yaml_config() -> dict[str, Any]:
    """Read and parse config.yaml, returning an empty dict on failure."""
    if not CONFIG_YAML_PATH.exists():
        return {}
    with CONFIG_YAML_PATH.open(encoding="utf-8") as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict):
        return {}
    # Scalar overrides belong to the environment, never to the file.
    data.pop("budget", None)
    return data


@lru_cache
def get_settings() -> Settings:
    """Return cached settings singleton."""
    return Settings()
