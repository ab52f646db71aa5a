"""
Empirical statistics of tables of zeta-zero ordinates.

Tables are plain text, one ordinate per line, '#' starts a comment line.
The statistics here are evidence at finite height, not certificates: the
largest observed normalized gap is a lower-bound witness for lambda only in
the limsup sense.
"""

import csv
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ..models import GapStats, HistogramBin
from .errors import EmptyInput, InsufficientData, OrderError, OutOfRange, ParseError

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi
MIN_FIRST_ORDINATE = 14.0
DUPLICATE_TOLERANCE = 1e-12

PathLike = Union[str, Path]


@dataclass(frozen=True, eq=False)
class ZeroTable:
    """Sorted positive zero ordinates and where they came from."""

    ordinates: np.ndarray
    source: str = ""

    @property
    def count(self) -> int:
        return int(len(self.ordinates))

    @property
    def first(self) -> float:
        return float(self.ordinates[0])

    @property
    def last(self) -> float:
        return float(self.ordinates[-1])


def load_zeros(path: PathLike, order_tolerance: float = 1e-9) -> ZeroTable:
    """
    Read a plain-text table of zero ordinates.

    Args:
        path: File with one decimal ordinate per line
        order_tolerance: Largest descent between consecutive lines treated as noise

    Returns:
        ZeroTable with the ordinates sorted ascending

    Raises:
        ParseError: On a line that is not a positive finite number or not valid UTF-8
        OrderError: If the input descends by more than order_tolerance
        EmptyInput: If the file has no ordinates
    """
    source = str(path)
    values: list[float] = []
    first_line = 0
    with open(path, "rb") as handle:
        for line_no, raw in enumerate(handle, start=1):
            try:
                text = raw.decode("utf-8").strip()
            except UnicodeDecodeError:
                shown = raw.decode("utf-8", errors="replace").strip()
                raise ParseError(line_no, shown, source, reason="invalid UTF-8 in") from None
            if not text or text.startswith("#"):
                continue
            try:
                value = float(text)
            except ValueError:
                raise ParseError(line_no, text, source) from None
            if not (math.isfinite(value) and value > 0):
                raise ParseError(line_no, text, source, reason="ordinate must be positive, got")
            if values and value < values[-1] - order_tolerance:
                raise OrderError(line_no, values[-1], value)
            if not values:
                first_line = line_no
            values.append(value)

    if not values:
        raise EmptyInput(f"{source}: no ordinates found")

    ordinates = np.sort(np.asarray(values, dtype=float), kind="stable")
    if ordinates[0] <= MIN_FIRST_ORDINATE:
        raise ParseError(
            first_line,
            repr(values[0]),
            source,
            reason=f"first ordinate must exceed {MIN_FIRST_ORDINATE:g}, got",
        )
    duplicates = int(np.sum(np.diff(ordinates) <= DUPLICATE_TOLERANCE))
    if duplicates:
        logger.warning(f"{source}: {duplicates} repeated ordinates")
    logger.info(f"Loaded {len(ordinates)} ordinates from {source}")
    return ZeroTable(ordinates=ordinates, source=source)


def _require_pairs(table: ZeroTable) -> None:
    if table.count < 2:
        raise InsufficientData(f"need at least 2 ordinates, have {table.count}")


def normalized_gaps(table: ZeroTable) -> np.ndarray:
    """delta_i = (gamma_{i+1} - gamma_i) log(gamma_i) / 2pi."""
    _require_pairs(table)
    gamma = table.ordinates
    return np.diff(gamma) * np.log(gamma[:-1]) / TWO_PI


def unfolded_gaps(table: ZeroTable) -> np.ndarray:
    """Gaps rescaled by the local zero density, (gamma' - gamma) log(gamma/2pi) / 2pi."""
    _require_pairs(table)
    gamma = table.ordinates
    return np.diff(gamma) * np.log(gamma[:-1] / TWO_PI) / TWO_PI


def unfolded_mean_gap(table: ZeroTable) -> float:
    """Mean unfolded gap; tends to 1 at every height."""
    return float(np.mean(unfolded_gaps(table)))


def counting_main_term(T: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """(T/2pi) log(T/2pi) - T/2pi."""
    scaled = np.asarray(T, dtype=float) / TWO_PI
    main = scaled * np.log(scaled) - scaled
    return float(main) if np.ndim(main) == 0 else main


def counting_function(table: ZeroTable, T: float) -> int:
    """Number of ordinates in (0, T]."""
    return int(np.searchsorted(table.ordinates, T, side="right"))


def counting_residual(table: ZeroTable, T: float) -> float:
    """
    N(T) minus its smooth main term, with N counted from the table.

    Raises:
        OutOfRange: If T exceeds the last ordinate of the table
    """
    if T > table.last:
        raise OutOfRange(f"T={T} is beyond the table coverage (last ordinate {table.last})")
    if T <= 0:
        raise ValueError(f"T must be positive, got {T}")
    return counting_function(table, T) - counting_main_term(T)


def counting_residual_extremes(
    table: ZeroTable, t_max: Optional[float] = None
) -> tuple[float, float]:
    """
    Exact (min, max) of the counting residual over [gamma_1, t_max].

    Between ordinates the residual only decreases, so its extremes sit on
    either side of a jump or at t_max itself.
    """
    t_max = table.last if t_max is None else t_max
    if t_max > table.last:
        raise OutOfRange(f"t_max={t_max} is beyond the table coverage (last {table.last})")
    gamma = table.ordinates[table.ordinates <= t_max]
    if len(gamma) == 0:
        raise InsufficientData(f"no ordinates at or below {t_max}")
    main = np.asarray(counting_main_term(gamma))
    after = np.searchsorted(table.ordinates, gamma, side="right") - main
    before = np.searchsorted(table.ordinates, gamma, side="left") - main
    at_end = counting_function(table, t_max) - float(counting_main_term(t_max))
    return min(float(np.min(before)), at_end), float(np.max(after))


def max_counting_residual(table: ZeroTable, t_max: Optional[float] = None) -> float:
    low, high = counting_residual_extremes(table, t_max)
    return max(abs(low), abs(high))


def gap_histogram(deltas: np.ndarray, bin_width: float = 0.1) -> list[HistogramBin]:
    """Bins of width bin_width over [0, ceil(max delta)]; the last bin is closed."""
    if not bin_width > 0:
        raise ValueError(f"bin width must be positive, got {bin_width}")
    top = max(math.ceil(float(np.max(deltas))), 1) if len(deltas) else 1
    n_bins = max(int(math.ceil(top / bin_width - 1e-9)), 1)
    edges = np.arange(n_bins + 1, dtype=float) * bin_width
    counts, _ = np.histogram(deltas, bins=edges)
    return [
        HistogramBin(lo=round(float(edges[i]), 12), hi=round(float(edges[i + 1]), 12), n=int(n))
        for i, n in enumerate(counts)
    ]


def max_gap_report(table: ZeroTable, bin_width: float = 0.1) -> GapStats:
    """
    Largest normalized gap with its pair of ordinates, the mean and a histogram.

    Raises:
        InsufficientData: If the table has fewer than two ordinates
    """
    deltas = normalized_gaps(table)
    index = int(np.argmax(deltas))
    stats = GapStats(
        max_delta=float(deltas[index]),
        argmax_gamma=float(table.ordinates[index]),
        argmax_gamma_prime=float(table.ordinates[index + 1]),
        mean_delta=float(np.mean(deltas)),
        count=table.count,
        histogram=gap_histogram(deltas, bin_width),
    )
    logger.info(
        f"max delta {stats.max_delta:.6f} between {stats.argmax_gamma} "
        f"and {stats.argmax_gamma_prime}"
    )
    return stats


def gap_stats_json(stats: GapStats) -> str:
    return json.dumps(stats.model_dump(mode="json"), indent=2)


def write_gap_stats_json(stats: GapStats, path: PathLike) -> None:
    Path(path).write_text(gap_stats_json(stats) + "\n", encoding="utf-8")


def write_histogram_csv(stats: GapStats, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["lo", "hi", "n"])
        for row in stats.histogram:
            writer.writerow([row.lo, row.hi, row.n])
