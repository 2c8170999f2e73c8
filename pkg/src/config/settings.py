"""
File: settings.py
Description: Unified configuration settings for RingDiag
Author: RingDiag Team
Created: 2025-06-02
"""

from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.core.domain.exceptions import ConfigurationException


class Settings(BaseSettings):
    # Application settings
    app_name: str = "RingDiag"
    app_description: str = (
        "Static-rule ring synthesis and probe-based link failure localization"
    )
    app_version: str = "0.1.0"

    # Environment settings
    environment: str = Field(
        default="local",
        alias="ENVIRONMENT",
        description="Current environment (local, dev, ci)",
    )

    # Logging settings
    log_level: str = Field(default="INFO", alias="LOG_LEVEL")
    log_format: str = Field(
        default="%(asctime)s %(levelname)s %(name)s: %(message)s", alias="LOG_FORMAT"
    )

    # Forwarding plane model
    tau_us: float = Field(
        default=1.0,
        alias="RINGDIAG_TAU_US",
        gt=0,
        description="Per-hop switching delay of a control packet in microseconds",
    )
    tag_budget: int = Field(default=4094, alias="RINGDIAG_TAG_BUDGET", ge=1)
    default_controller: str = Field(default="C1", alias="RINGDIAG_CONTROLLER")

    # Walk synthesis
    exact_matching_limit: int = Field(
        default=40,
        alias="RINGDIAG_EXACT_MATCHING_LIMIT",
        description="Largest odd-vertex count paired with exact matching",
    )

    # Experiments
    corpus_dir: str = Field(default="corpus", alias="RINGDIAG_CORPUS_DIR")
    failures_k: int = Field(default=4, alias="RINGDIAG_FAILURES_K", ge=1)
    max_edges: int = Field(default=20, alias="RINGDIAG_MAX_EDGES", ge=1)
    multifail_cap: int = Field(default=200_000, alias="RINGDIAG_MULTIFAIL_CAP", ge=1)
    workers: int = Field(default=1, alias="RINGDIAG_WORKERS", ge=1)

    # Pydantic configuration
    model_config = SettingsConfigDict(
        env_file=".env", extra="ignore", case_sensitive=False
    )


def load_settings() -> Settings:
    """Settings from the environment and .env, with errors as domain exceptions."""
    try:
        return Settings()
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first.get("loc", ()))
        raise ConfigurationException(f"Invalid setting {field}: {first.get('msg')}")


settings = load_settings()
