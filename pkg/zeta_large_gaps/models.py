"""
Report models for Zeta Large Gaps.

These pydantic models are what the library hands back to callers and what the
CLI serializes. Field order is the JSON field order; exact rationals
serialize as "p/q" strings so no precision is lost in a report.
"""

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from .core.ratpoly import ExactRational as Rational


class BetaTerm(BaseModel):
    """One integrated series coefficient beta_j = integral (1-x)^3 B(j; x) dx."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    j: int = Field(..., description="Index of B(j; x)")
    value: Rational = Field(..., description="Exact value of the integral")


class SeriesTerm(BaseModel):
    """One summand of h(c)."""

    j: int = Field(..., description="Series index (pairs with beta_{2j})")
    value: float = Field(..., description="Contribution of this index to h")


class RatioReport(BaseModel):
    """Full provenance of one h(c) evaluation."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    c: float = Field(..., description="Gap parameter; the criterion certifies lambda > c/pi")
    theta: Rational = Field(..., description="Mollifier length exponent")
    generalized_theta: bool = Field(
        False, description="Whether the inferred general-theta weights were used"
    )
    coefficients: list[Rational] = Field(..., description="Mollifier coefficients a_2..a_M")
    denominator: Rational = Field(..., description="Second-moment shape factor (exact)")
    beta: list[BetaTerm] = Field(
        default_factory=list, description="Integrated B(2j; x) coefficients"
    )
    terms: list[SeriesTerm] = Field(default_factory=list, description="Summands of h")
    J_used: int = Field(..., description="Index at which the series met its tolerance")
    h: float = Field(..., description="Value of the ratio h(c)")
    lambda_implied: Optional[float] = Field(None, description="c/pi when h < 1")


class LambdaCertificate(BaseModel):
    """A certified lower bound lambda > c_star/pi with its rational witness."""

    model_config = ConfigDict(arbitrary_types_allowed=True, populate_by_name=True)

    M: int = Field(..., description="Degree bound of the mollifier family")
    theta: Rational = Field(..., description="Mollifier length exponent")
    c_star: float = Field(..., description="Largest certified gap parameter")
    lambda_value: float = Field(..., alias="lambda", description="c_star / pi")
    witness: list[Rational] = Field(
        ..., description="Rational coefficients a_2..a_M of the witness"
    )
    witness_display: list[float] = Field(
        default_factory=list, description="Witness rescaled so that a_2 = 1000"
    )
    h_at_witness: float = Field(
        ..., description="h(c_star) of the witness through the exact pipeline"
    )
    h_below_tolerance: float = Field(..., description="h(c_star - tolerance_c) of the witness")
    mu: float = Field(..., description="Minimal generalized eigenvalue at c_star")
    tolerance_c: float = Field(..., description="Bisection tolerance")


class SweepEntry(BaseModel):
    """Certified bound for one degree in a sweep."""

    model_config = ConfigDict(populate_by_name=True)

    M: int
    c_star: float
    lambda_value: float = Field(..., alias="lambda")
    h_at_witness: float


class SweepReport(BaseModel):
    """Degree sweep of certified bounds."""

    model_config = ConfigDict(populate_by_name=True)

    entries: list[SweepEntry] = Field(default_factory=list)
    tolerance_c: float
    monotone: bool = Field(..., description="lambda(M+1) >= lambda(M) - 2 tol_c for every step")
    degrees_above_three: list[int] = Field(
        default_factory=list, description="Degrees whose certificate exceeds lambda = 3"
    )


class ScanPoint(BaseModel):
    c: float
    lambda_value: float = Field(..., alias="lambda")
    h: float

    model_config = ConfigDict(populate_by_name=True)


class ScanReport(BaseModel):
    """h(c) over a grid of gap parameters for one mollifier."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    theta: Rational
    coefficients: list[Rational]
    points: list[ScanPoint] = Field(default_factory=list)


class EulerProductResult(BaseModel):
    """Truncated Euler product with a bound on the neglected tail."""

    name: str = Field(..., description="Constant identifier")
    value: float = Field(..., description="Product over primes up to the cutoff")
    cutoff: int = Field(..., description="Prime bound")
    tail_bound: float = Field(..., description="Bound on |log(true / computed)|")
    prime_count: int = Field(..., description="Number of primes in the product")


class IdentityCheck(BaseModel):
    """Outcome of an exact per-prime identity check."""

    identity: str
    prime_limit: int
    primes_checked: int
    passed: bool
    first_failure: Optional[int] = None


class ConstantsReport(BaseModel):
    """Euler-product constants together with the per-prime identity checks."""

    results: list[EulerProductResult] = Field(default_factory=list)
    identities: list[IdentityCheck] = Field(default_factory=list)
    all_passed: bool


class HistogramBin(BaseModel):
    lo: float
    hi: float
    n: int


class GapStats(BaseModel):
    """Normalized-gap statistics of a zero table."""

    max_delta: float = Field(..., description="Largest normalized gap")
    argmax_gamma: float = Field(..., description="Lower ordinate of the largest gap")
    argmax_gamma_prime: float = Field(..., description="Upper ordinate of the largest gap")
    mean_delta: float = Field(..., description="Mean normalized gap")
    count: int = Field(..., description="Number of ordinates")
    histogram: list[HistogramBin] = Field(default_factory=list)


class RunConfig(BaseModel):
    """The resolved invocation a report was produced from."""

    command: str
    arguments: dict[str, Any] = Field(default_factory=dict)
    settings: dict[str, Any] = Field(default_factory=dict)
