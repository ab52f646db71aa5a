"""``lambda``: certify the largest lambda for mollifiers of degree <= M."""

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
    parser = subparsers.add_parser(
        "lambda", help="Certify lambda > c*/pi with an optimized mollifier of degree <= M"
    )
    parser.add_argument("--degree", type=int, required=True, help="Degree bound M (at least 2)")
    parser.add_argument(
        "--tol-c", type=float, default=None, help=f"Bisection tolerance (default {settings.tol_c})"
    )
    add_theta_arguments(parser)
    parser.set_defaults(handler=cmd_lambda)


def cmd_lambda(args: argparse.Namespace, settings: Settings) -> int:
    settings = apply_overrides(settings, tol_c=args.tol_c)
    output = resolve_format(args, settings, ("json", "text"))
    optimizer = MollifierOptimizer(settings, theta_from_args(args), args.generalized_theta)
    certificate = optimizer.max_lambda(args.degree)

    if output == "json":
        emit_json(
            {
                "config": run_config(args, settings).model_dump(mode="json"),
                "certificate": certificate.model_dump(mode="json", by_alias=True),
            }
        )
    else:
        emit_text(
            [
                f"M: {certificate.M}",
                f"lambda: {certificate.lambda_value!r}",
                f"c_star: {certificate.c_star!r}",
                f"h_at_witness: {certificate.h_at_witness!r}",
                "witness: " + ", ".join(str(a) for a in certificate.witness),
            ]
        )
    return 0
