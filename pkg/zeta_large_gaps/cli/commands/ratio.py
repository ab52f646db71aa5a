"""``ratio``: evaluate h(c) for one mollifier."""

import argparse

from ...config import Settings
from ...core.functional import MollifierSpec, h_ratio
from ..utils import (
    add_theta_arguments,
    apply_overrides,
    emit_json,
    emit_text,
    parse_coefficients,
    parse_gap_parameter,
    resolve_format,
    run_config,
    theta_from_args,
)

EXIT_H_NOT_BELOW_ONE = 2


def register(subparsers: argparse._SubParsersAction, settings: Settings) -> None:
    parser = subparsers.add_parser("ratio", help="Evaluate h(c) for a mollifier polynomial")
    parser.add_argument(
        "--coeffs",
        type=parse_coefficients,
        required=True,
        help="Coefficients a_2,...,a_M (use --coeffs=-1,2 when the first is negative)",
    )
    parser.add_argument(
        "--c", type=parse_gap_parameter, required=True, help="Gap parameter, e.g. 9.11 or 2.9pi"
    )
    parser.add_argument("--tol-series", type=float, default=None, help="Series tolerance")
    add_theta_arguments(parser)
    parser.set_defaults(handler=cmd_ratio)


def cmd_ratio(args: argparse.Namespace, settings: Settings) -> int:
    """Exit 0 when h < 1, 2 when h >= 1."""
    settings = apply_overrides(settings, tol_series=args.tol_series)
    output = resolve_format(args, settings, ("json", "text"))
    spec = MollifierSpec.from_sequence(args.coeffs)
    report = h_ratio(
        spec,
        args.c,
        theta_from_args(args),
        settings.tol_series,
        generalized_theta=args.generalized_theta,
        series_cap=settings.series_cap,
    )

    if output == "json":
        emit_json(
            {
                "config": run_config(args, settings).model_dump(mode="json"),
                "report": report.model_dump(mode="json"),
            }
        )
    else:
        emit_text(
            [
                f"c: {report.c!r}",
                f"h: {report.h!r}",
                f"denominator: {report.denominator}",
                f"J_used: {report.J_used}",
                f"lambda_implied: {report.lambda_implied!r}",
            ]
        )
    return 0 if report.h < 1 else EXIT_H_NOT_BELOW_ONE
