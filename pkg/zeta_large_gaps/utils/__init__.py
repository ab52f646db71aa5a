"""Utility functions for Zeta Large Gaps."""

from .env_logging import log_environment_variables

__all__ = ["log_environment_variables"]
