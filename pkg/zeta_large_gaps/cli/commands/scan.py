"""``scan``: h(c) over a grid of gap parameters for one mollifier."""

import argparse
import math

import numpy as np

from ...config import Settings
from ...core.functional import MollifierSpec, h_scan
from ...models import ScanPoint, ScanReport
from ..utils import (
    add_theta_arguments,
    emit_csv,
    emit_json,
    parse_coefficients,
    parse_gap_parameter,
    resolve_format,
    run_config,
    theta_from_args,
)


def register(subparsers: argparse._SubParsersAction, settings: Settings) -> None:
    parser = subparsers.add_parser("scan", help="Tabulate h(c) for one mollifier (CSV)")
    parser.add_argument("--coeffs", type=parse_coefficients, required=True)
    parser.add_argument("--c-min", type=parse_gap_parameter, required=True)
    parser.add_argument("--c-max", type=parse_gap_parameter, required=True)
    parser.add_argument("--steps", type=int, default=50, help="Number of grid points")
    add_theta_arguments(parser)
    parser.set_defaults(handler=cmd_scan)


def cmd_scan(args: argparse.Namespace, settings: Settings) -> int:
    output = resolve_format(args, settings, ("csv", "json"), default="csv")
    if args.steps < 2:
        raise ValueError(f"--steps must be at least 2, got {args.steps}")
    if not args.c_max > args.c_min:
        raise ValueError("--c-max must exceed --c-min")

    spec = MollifierSpec.from_sequence(args.coeffs)
    theta = theta_from_args(args)
    grid = [float(c) for c in np.linspace(args.c_min, args.c_max, args.steps)]
    points = h_scan(
        spec,
        grid,
        theta,
        settings.tol_series,
        generalized_theta=args.generalized_theta,
        series_cap=settings.series_cap,
    )

    if output == "csv":
        emit_csv(["c", "lambda", "h"], ([c, c / math.pi, h] for c, h in points))
    else:
        report = ScanReport(
            theta=theta.theta,
            coefficients=list(spec.coefficients),
            points=[ScanPoint(c=c, lambda_value=c / math.pi, h=h) for c, h in points],
        )
        emit_json(
            {
                "config": run_config(args, settings).model_dump(mode="json"),
                "scan": report.model_dump(mode="json", by_alias=True),
            }
        )
    return 0
