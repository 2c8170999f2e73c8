"""
File: experiment.py
Description: Validated configuration of one evaluation run
Author: RingDiag Team
Created: 2025-06-02
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from src.config.settings import settings
from src.core.domain.exceptions import ValidationException


class ExperimentMode(str, Enum):
    """Evaluation harness modes."""

    RATIO = "ratio"
    MULTIFAIL = "multifail"
    BOUNDS = "bounds"
    DIAGNOSE = "diagnose"
    RULES = "rules"
    TOPOLOGY = "topology"


class OutputFormat(str, Enum):
    """Report formats understood by the writers."""

    JSON = "json"
    CSV = "csv"
    PDF = "pdf"
    TEXT = "text"


class ExperimentConfig(BaseModel):
    """Configuration shared by every evaluation mode."""

    model_config = ConfigDict(frozen=True)

    mode: ExperimentMode = ExperimentMode.RATIO
    corpus_dir: str = Field(default_factory=lambda: settings.corpus_dir)
    failures_k: int = Field(default_factory=lambda: settings.failures_k, ge=1)
    max_edges: int = Field(default_factory=lambda: settings.max_edges, ge=1)
    seed: int = 0
    tau_us: float = Field(default_factory=lambda: settings.tau_us, gt=0)
    m: List[int] = Field(default_factory=lambda: [1])
    output: Optional[str] = None
    output_format: OutputFormat = OutputFormat.JSON
    exact_matching: bool = False
    asymmetric: bool = False
    multifail_cap: int = Field(default_factory=lambda: settings.multifail_cap, ge=1)
    sample_patterns: int = Field(default=0, ge=0)
    workers: int = Field(default_factory=lambda: settings.workers, ge=1)
    strict: bool = False

    @field_validator("m")
    @classmethod
    def _check_parallelism(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("at least one parallelism degree is required")
        if any(m < 1 for m in value):
            raise ValueError("parallelism degree m must be >= 1")
        return value

    @classmethod
    def build(cls, **values) -> "ExperimentConfig":
        """Create a config, turning pydantic errors into domain validation errors."""
        try:
            return cls(**values)
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(part) for part in first.get("loc", ()))
            raise ValidationException(
                f"Invalid experiment configuration: {first.get('msg')}",
                field=field or None,
                value=first.get("input"),
            )
