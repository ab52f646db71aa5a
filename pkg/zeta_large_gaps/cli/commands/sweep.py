"""``sweep``: certified lambda across a range of degrees."""

import argparse

from ...config import Settings
from ...core.optimizer import MollifierOptimizer
from ..utils import (
    add_theta_arguments,
    apply_overrides,
    emit_json,
    emit_text,
    resolve_format,
    run_config,
    theta_from_args,
)


def register(subparsers: argparse._SubParsersAction, settings: Settings) -> None:
    parser = subparsers.add_parser("sweep", help="Certify lambda for each degree in a range")
    parser.add_argument("--degree-min", type=int, default=2)
    parser.add_argument("--degree-max", type=int, required=True)
    parser.add_argument("--tol-c", type=float, default=None)
    add_theta_arguments(parser)
    parser.set_defaults(handler=cmd_sweep)


def cmd_sweep(args: argparse.Namespace, settings: Settings) -> int:
    """Exit 1 if lambda decreases with the degree beyond tolerance."""
    settings = apply_overrides(settings, tol_c=args.tol_c)
    output = resolve_format(args, settings, ("json", "text"))
    if args.degree_min < 2 or args.degree_max < args.degree_min:
        raise ValueError("degrees must satisfy 2 <= --degree-min <= --degree-max")

    optimizer = MollifierOptimizer(settings, theta_from_args(args), args.generalized_theta)
    report = optimizer.degree_sweep(range(args.degree_min, args.degree_max + 1))

    if output == "json":
        emit_json(
            {
                "config": run_config(args, settings).model_dump(mode="json"),
                "sweep": report.model_dump(mode="json", by_alias=True),
            }
        )
    else:
        lines = [f"M={e.M:>2}  lambda > {e.lambda_value:.9f}" for e in report.entries]
        lines.append(f"monotone: {report.monotone}")
        lines.append(f"degrees above lambda = 3: {report.degrees_above_three or 'none'}")
        emit_text(lines)
    return 0 if report.monotone else 1
