"""
Exception hierarchy for the large-gaps toolkit.

Every failure the library can signal derives from LargeGapsError so the CLI
can map them onto exit codes in one place.
"""

from typing import Optional


class LargeGapsError(Exception):
    """Base class for all domain errors."""


class DegenerateDenominator(LargeGapsError):
    """The second-moment denominator is not strictly positive."""


class NotPositiveDefinite(DegenerateDenominator):
    """A denominator Gram matrix failed its positive-definiteness check."""


class TruncationFailure(LargeGapsError):
    """A series did not meet its tolerance before the index cap."""


class BracketFailure(LargeGapsError):
    """No failing gap parameter was found below the bracket limit."""


class NotPrime(LargeGapsError, ValueError):
    """An Euler-product local factor was requested at a composite index."""


class UnknownConstant(LargeGapsError, KeyError):
    """The requested Euler-product constant is not known."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown constant"


class ZeroTableError(LargeGapsError):
    """Base class for zero-table ingestion and statistics errors."""


class ParseError(ZeroTableError):
    """A line of a zero table could not be parsed as an ordinate."""

    def __init__(
        self,
        line: int,
        content: str,
        source: Optional[str] = None,
        reason: str = "cannot parse ordinate from",
    ):
        self.line = line
        self.content = content
        self.source = source
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {reason} {content!r}")


class OrderError(ZeroTableError):
    """Ordinates descend by more than the allowed tolerance."""

    def __init__(self, line: int, previous: float, current: float):
        self.line = line
        self.previous = previous
        self.current = current
        super().__init__(
            f"line {line}: ordinate {current!r} is below the previous ordinate {previous!r}"
        )


class EmptyInput(ZeroTableError):
    """A zero table contained no ordinates."""


class InsufficientData(ZeroTableError):
    """Fewer ordinates than an operation needs."""


class OutOfRange(ZeroTableError):
    """A height lies beyond the coverage of the zero table."""


class ConvergenceFailure(LargeGapsError):
    """An iterative eigensolver hit its sweep limit."""


class CertificationFailure(LargeGapsError):
    """A rationalized witness failed its exact re-check below the certified gap parameter."""
