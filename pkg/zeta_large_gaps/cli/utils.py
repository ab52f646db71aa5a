"""Shared argument parsing and report output for the CLI commands."""

import argparse
import csv
import json
import math
import re
import sys
from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import Any, Optional

from ..config import Settings
from ..core.functional import ThetaParam
from ..core.ratpoly import as_rational
from ..models import RunConfig

_PI_SUFFIX = re.compile(r"^\s*([+-]?[0-9]*\.?[0-9]*(?:[eE][+-]?[0-9]+)?)\s*\*?\s*(pi|π)\s*$")


def parse_gap_parameter(text: str) -> float:
    """
    Parse a gap parameter c, either decimal ("9.11") or a multiple of pi ("2.9pi").

    Raises:
        argparse.ArgumentTypeError: If the value is not a positive finite number
    """
    match = _PI_SUFFIX.match(text)
    try:
        if match:
            factor = match.group(1)
            if factor in ("", "+", "-"):
                factor += "1"
            value = float(factor) * math.pi
        else:
            value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid gap parameter: {text!r}") from None
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"gap parameter must be positive, got {text!r}")
    return value


def parse_coefficients(text: str) -> list[Fraction]:
    """Comma-separated exact coefficients a_2,...,a_M ("1000,-9332,1/3")."""
    parts = [part.strip() for part in text.split(",")]
    if not parts or any(not part for part in parts):
        raise argparse.ArgumentTypeError(f"invalid coefficient list: {text!r}")
    try:
        return [as_rational(part) for part in parts]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def parse_rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def add_theta_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--theta-inv",
        type=parse_rational,
        default=Fraction(2),
        help="Inverse mollifier length exponent (default 2, i.e. theta = 1/2)",
    )
    parser.add_argument(
        "--generalized-theta",
        action="store_true",
        help="Allow theta != 1/2 with the inferred general-theta series weights",
    )


def theta_from_args(args: argparse.Namespace) -> ThetaParam:
    return ThetaParam.from_inverse(args.theta_inv)


def apply_overrides(settings: Settings, **overrides: Any) -> Settings:
    """Settings with the given flag values replacing their defaults (validated)."""
    updates = {key: value for key, value in overrides.items() if value is not None}
    if not updates:
        return settings
    return Settings.model_validate({**settings.model_dump(), **updates})


def resolve_format(
    args: argparse.Namespace,
    settings: Settings,
    supported: Sequence[str],
    default: Optional[str] = None,
) -> str:
    """The output format for a command; ValueError if the command cannot produce it."""
    chosen = args.format or default or settings.output_format
    if chosen not in supported:
        raise ValueError(f"{args.command} supports --format {', '.join(supported)}, not {chosen}")
    return chosen


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {key: _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    return value


def run_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """The resolved invocation: subcommand, parsed flags and effective settings."""
    arguments = {
        key: _jsonable(value)
        for key, value in vars(args).items()
        if key not in ("handler", "command") and not callable(value)
    }
    return RunConfig(
        command=args.command,
        arguments=arguments,
        settings=settings.model_dump(mode="json"),
    )


def emit_json(payload: dict[str, Any]) -> None:
    """Print a report with stable field order and shortest round-trip floats."""
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def emit_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)


def emit_text(lines: Iterable[str]) -> None:
    for line in lines:
        sys.stdout.write(f"{line}\n")
