"""
Command-line application for Zeta Large Gaps.

Reports go to stdout, diagnostics to stderr. Exit codes: 0 on success,
1 on any error, 2 when ``ratio`` evaluates h(c) >= 1.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from typing import Optional

from .. import __version__
from ..config import OUTPUT_FORMATS, Settings, get_settings, log_configuration
from ..core.errors import LargeGapsError
from ..utils import log_environment_variables
from .commands import constants, gaps, lambda_, ratio, scan, sweep

logger = logging.getLogger(__name__)

COMMAND_MODULES = (ratio, lambda_, constants, gaps, scan, sweep)


class ReportArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that exits with status 1 on usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def create_parser(settings: Optional[Settings] = None) -> argparse.ArgumentParser:
    """
    Create the argument parser with every subcommand registered.

    Args:
        settings: Settings used for flag defaults (defaults to the global settings)

    Returns:
        Configured parser
    """
    settings = settings or get_settings()
    parser = ReportArgumentParser(
        prog="zeta-large-gaps",
        description="Certify large gaps between zeta zeros with optimized mollifiers.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        default=None,
        help=f"Logging level for stderr diagnostics (default {settings.log_level})",
    )
    parser.add_argument(
        "--format",
        choices=OUTPUT_FORMATS,
        default=None,
        help="Report format, where the subcommand supports it",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    for module in COMMAND_MODULES:
        module.register(subparsers, settings)
    return parser


def configure_logging(level: str) -> None:
    """Configure the root logger once, writing to stderr."""
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise ValueError(f"unknown log level: {level}")
    logging.basicConfig(
        level=numeric,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    logging.getLogger().setLevel(numeric)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    try:
        settings = get_settings()
        parser = create_parser(settings)
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    try:
        configure_logging(args.log_level or settings.log_level)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1

    if settings.log_env_on_startup:
        log_environment_variables(logger.info)
    log_configuration(settings)

    if not args.command:
        parser.print_help(sys.stderr)
        return 1

    try:
        return args.handler(args, settings)
    except (LargeGapsError, ValueError, OSError) as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return 1
