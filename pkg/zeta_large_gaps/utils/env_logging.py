"""Environment variable logging utilities."""

import os
from typing import Callable

ENV_PREFIX = "ZLG_"


def log_environment_variables(output_fn: Callable[[str], None], prefix: str = ENV_PREFIX) -> int:
    """
    Log the environment variables that can change a run's results.

    Only variables carrying the settings prefix are shown, sorted by name,
    so two runs can be compared line by line.

    Args:
        output_fn: Function to use for output (e.g., print or logger.info)
        prefix: Variable name prefix to select (case-insensitive)

    Returns:
        Number of variables logged
    """
    output_fn("=" * 60)
    output_fn(f"Environment Variables ({prefix}*):")
    output_fn("=" * 60)

    env_vars = sorted(
        (key, value) for key, value in os.environ.items() if key.upper().startswith(prefix)
    )
    for key, value in env_vars:
        output_fn(f"  {key}={value}")
    if not env_vars:
        output_fn("  (none set; defaults apply)")

    output_fn("=" * 60)
    return len(env_vars)
