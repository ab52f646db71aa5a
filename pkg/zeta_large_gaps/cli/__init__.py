"""Command-line interface for Zeta Large Gaps."""

from .app import create_parser, main

__all__ = ["create_parser", "main"]
