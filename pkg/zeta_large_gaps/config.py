"""
Configuration management for Zeta Large Gaps.

Handles environment variables and run settings. Every tolerance and cutoff
that shapes a computation lives here so reports can embed the exact values
they were produced with.
"""

import logging
import math
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from . import __version__

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("json", "csv", "text")


class Settings(BaseSettings):
    """Run settings loaded from ZLG_* environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="ZLG_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Application settings
    app_name: str = "Zeta Large Gaps"
    app_version: str = __version__
    log_level: str = Field(
        default="WARNING", description="Logging level (diagnostics go to stderr)"
    )
    log_env_on_startup: bool = Field(
        default=False,
        description="Log ZLG_* environment variables when the CLI starts",
    )
    output_format: str = Field(default="json", description="Report format: json, csv or text")

    # Gap functional
    tol_series: float = Field(
        default=1e-14,
        description="Relative truncation tolerance for the h(c) series",
    )
    series_cap: int = Field(
        default=60,
        description="Hard cap on the series index; reaching it is a TruncationFailure",
        ge=2,
    )

    # Optimizer
    tol_c: float = Field(default=1e-6, description="Bisection tolerance on the gap parameter c")
    max_denominator: int = Field(
        default=10**6,
        description="Largest denominator used when rationalizing an eigenvector witness",
        ge=1,
    )
    probe_count: int = Field(default=32, description="Random probes for the Rayleigh check", ge=1)
    probe_seed: int = Field(default=20240229, description="Seed for the Rayleigh probes")
    jacobi_tol: float = Field(default=1e-12, description="Off-diagonal norm target for Jacobi")
    jacobi_max_sweeps: int = Field(default=100, description="Jacobi sweep limit", ge=1)
    bracket_limit: float = Field(
        default=10 * math.pi,
        description="Largest c probed when bracketing the certified gap parameter",
    )

    # Euler products
    prime_cutoff: int = Field(default=10**6, description="Prime bound for Euler products")
    identity_prime_limit: int = Field(
        default=10**4,
        description="Primes up to this bound are checked for the exact local identities",
        ge=2,
    )

    # Zero tables
    histogram_bin_width: float = Field(default=0.1, description="Width of gap histogram bins")
    order_tolerance: float = Field(
        default=1e-9,
        description="Largest descent between consecutive ordinates accepted as noise",
    )

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v):
        """Accept level names in any case."""
        level = str(v).upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown log level: {v}")
        return level

    @field_validator("output_format", mode="after")
    @classmethod
    def validate_output_format(cls, v):
        """Validate output format value."""
        if v not in OUTPUT_FORMATS:
            raise ValueError(f"output_format must be one of {', '.join(OUTPUT_FORMATS)}")
        return v

    @field_validator(
        "tol_series",
        "tol_c",
        "jacobi_tol",
        "bracket_limit",
        "histogram_bin_width",
        "order_tolerance",
        mode="after",
    )
    @classmethod
    def validate_positive(cls, v, info):
        """Tolerances and widths must be strictly positive."""
        if not v > 0:
            raise ValueError(f"{info.field_name} must be positive")
        return v

    @field_validator("prime_cutoff", mode="after")
    @classmethod
    def validate_prime_cutoff(cls, v):
        """The tail bound is only valid past p = 100."""
        if v < 100:
            raise ValueError("prime_cutoff must be at least 100")
        return v


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get or create global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next get_settings() re-reads the environment."""
    global _settings
    _settings = None


def log_configuration(settings: Settings) -> None:
    """
    Log configuration details for debugging.

    This should be called after logging is configured.
    """
    logger.info("=" * 60)
    logger.info(f"{settings.app_name.upper()} CONFIGURATION")
    logger.info("=" * 60)
    logger.info(f"Version: {settings.app_version}")
    logger.info(f"Series tolerance: {settings.tol_series} (cap {settings.series_cap})")
    logger.info(f"Bisection tolerance: {settings.tol_c}")
    logger.info(f"Witness max denominator: {settings.max_denominator}")
    logger.info(f"Prime cutoff: {settings.prime_cutoff}")
    logger.info(f"Identity prime limit: {settings.identity_prime_limit}")
    logger.info("=" * 60)
