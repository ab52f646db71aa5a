"""CLI subcommands: each module registers its parser and handler."""

from . import constants, gaps, lambda_, ratio, scan, sweep

__all__ = ["constants", "gaps", "lambda_", "ratio", "scan", "sweep"]
