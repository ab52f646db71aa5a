"""``constants``: Euler-product constants and the exact per-prime identities."""

import argparse

from ...config import Settings
from ...core.constants import constants_report
from ..utils import apply_overrides, emit_csv, emit_json, emit_text, resolve_format, run_config


def register(subparsers: argparse._SubParsersAction, settings: Settings) -> None:
    parser = subparsers.add_parser(
        "constants", help="Evaluate A, C, D, U1, U2, W and check C^2 D = A, U1 U2 W = A"
    )
    parser.add_argument(
        "--cutoff",
        type=int,
        default=None,
        help=f"Prime bound for the products (default {settings.prime_cutoff})",
    )
    parser.add_argument(
        "--prime-limit",
        type=int,
        default=None,
        help=f"Primes checked for the identities (default {settings.identity_prime_limit})",
    )
    parser.set_defaults(handler=cmd_constants)


def cmd_constants(args: argparse.Namespace, settings: Settings) -> int:
    """Exit 0 only if every identity holds."""
    settings = apply_overrides(
        settings, prime_cutoff=args.cutoff, identity_prime_limit=args.prime_limit
    )
    output = resolve_format(args, settings, ("json", "csv", "text"))
    report = constants_report(settings.prime_cutoff, settings.identity_prime_limit)

    if output == "json":
        emit_json(
            {
                "config": run_config(args, settings).model_dump(mode="json"),
                "constants": report.model_dump(mode="json"),
            }
        )
    elif output == "csv":
        emit_csv(
            ["name", "value", "cutoff", "tail_bound"],
            ([r.name, f"{r.value:.10g}", r.cutoff, r.tail_bound] for r in report.results),
        )
    else:
        lines = [
            f"{r.name:>3} = {r.value:.10g}  (tail <= {r.tail_bound:.3g})" for r in report.results
        ]
        lines += [
            f"{check.identity}: {'PASS' if check.passed else 'FAIL'} "
            f"(p <= {check.prime_limit}, {check.primes_checked} primes)"
            for check in report.identities
        ]
        emit_text(lines)
    return 0 if report.all_passed else 1
