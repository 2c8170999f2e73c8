"""
File: test_config.py
Description: Unit tests for settings and experiment configuration
Author: RingDiag Team
Created: 2025-06-16
"""

import pytest
from pydantic import ValidationError

from src.config.experiment import ExperimentConfig, ExperimentMode, OutputFormat
from src.config.settings import Settings, load_settings
from src.core.domain.exceptions import ConfigurationException, ValidationException


@pytest.mark.unit
class TestSettings:
    """Test environment-driven settings."""

    def test_defaults(self, monkeypatch):
        """Test the documented defaults."""
        monkeypatch.delenv("RINGDIAG_TAU_US", raising=False)
        settings = Settings(_env_file=None)
        assert settings.tau_us == 1.0
        assert settings.tag_budget == 4094
        assert settings.default_controller == "C1"

    def test_environment_override(self, monkeypatch):
        """Test environment variables override defaults."""
        monkeypatch.setenv("RINGDIAG_TAU_US", "2.5")
        monkeypatch.setenv("RINGDIAG_WORKERS", "4")
        settings = Settings(_env_file=None)
        assert settings.tau_us == 2.5
        assert settings.workers == 4

    def test_invalid_environment_value(self, monkeypatch):
        """Test constraints apply to environment values."""
        monkeypatch.setenv("RINGDIAG_TAG_BUDGET", "0")
        with pytest.raises(ValidationError):
            Settings(_env_file=None)

    def test_load_settings_reports_configuration_error(self, monkeypatch):
        """Test invalid environment values surface as configuration errors."""
        monkeypatch.setenv("RINGDIAG_TAU_US", "-1")
        with pytest.raises(ConfigurationException) as exc_info:
            load_settings()
        assert "RINGDIAG_TAU_US" in exc_info.value.message
        assert exc_info.value.details["component"] == "configuration"


@pytest.mark.unit
class TestExperimentConfig:
    """Test run configuration validation."""

    def test_build(self):
        """Test a valid configuration."""
        config = ExperimentConfig.build(
            mode="bounds", m=[1, 4], tau_us=2.0, output_format="csv"
        )
        assert config.mode is ExperimentMode.BOUNDS
        assert config.output_format is OutputFormat.CSV
        assert config.m == [1, 4]

    @pytest.mark.parametrize(
        "values,field",
        [
            ({"m": [0]}, "m"),
            ({"m": []}, "m"),
            ({"tau_us": -1.0}, "tau_us"),
            ({"failures_k": 0}, "failures_k"),
            ({"output_format": "xlsx"}, "output_format"),
        ],
    )
    def test_invalid_values(self, values, field):
        """Test pydantic errors become validation exceptions naming the field."""
        with pytest.raises(ValidationException) as exc_info:
            ExperimentConfig.build(**values)
        assert exc_info.value.details["field"] == field

    def test_frozen(self):
        """Test configurations cannot change after validation."""
        config = ExperimentConfig.build()
        with pytest.raises(ValidationError):
            config.seed = 3
