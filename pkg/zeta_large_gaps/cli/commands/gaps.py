"""``gaps``: normalized-gap statistics of a table of zero ordinates."""

import argparse
from pathlib import Path

from ...config import Settings
from ...core.zerostats import (
    load_zeros,
    max_counting_residual,
    max_gap_report,
    unfolded_mean_gap,
    write_gap_stats_json,
    write_histogram_csv,
)
from ..utils import emit_csv, emit_json, emit_text, resolve_format, run_config


def register(subparsers: argparse._SubParsersAction, settings: Settings) -> None:
    parser = subparsers.add_parser("gaps", help="Gap statistics of a zero-ordinate table")
    parser.add_argument("--zeros", type=Path, required=True, help="Plain-text ordinate table")
    parser.add_argument(
        "--t-max", type=float, default=None, help="Height up to which the N(T) residual is scanned"
    )
    parser.add_argument("--histogram-csv", type=Path, default=None, help="Write lo,hi,n CSV here")
    parser.add_argument("--stats-json", type=Path, default=None, help="Write GapStats JSON here")
    parser.set_defaults(handler=cmd_gaps)


def cmd_gaps(args: argparse.Namespace, settings: Settings) -> int:
    output = resolve_format(args, settings, ("json", "csv", "text"))
    table = load_zeros(args.zeros, order_tolerance=settings.order_tolerance)
    stats = max_gap_report(table, settings.histogram_bin_width)
    unfolded = unfolded_mean_gap(table)
    t_max = args.t_max if args.t_max is not None else table.last
    residual = max_counting_residual(table, t_max)

    if args.stats_json:
        write_gap_stats_json(stats, args.stats_json)
    if args.histogram_csv:
        write_histogram_csv(stats, args.histogram_csv)

    if output == "json":
        emit_json(
            {
                "config": run_config(args, settings).model_dump(mode="json"),
                "gap_stats": stats.model_dump(mode="json"),
                "unfolded_mean_gap": unfolded,
                "t_max": t_max,
                "max_counting_residual": residual,
            }
        )
    elif output == "csv":
        emit_csv(["lo", "hi", "n"], ([b.lo, b.hi, b.n] for b in stats.histogram))
    else:
        emit_text(
            [
                f"count: {stats.count}",
                f"max_delta: {stats.max_delta!r}",
                f"argmax: ({stats.argmax_gamma!r}, {stats.argmax_gamma_prime!r})",
                f"mean_delta: {stats.mean_delta!r}",
                f"unfolded_mean_gap: {unfolded!r}",
                f"max_counting_residual: {residual!r} (T <= {t_max!r})",
            ]
        )
    return 0
