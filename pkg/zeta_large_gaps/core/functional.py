"""
The gap functional h(c).

For an admissible mollifier shape P(x) = sum_{k=2}^{M} a_k x^k the
leading-order ratio of the shifted to the plain mollified second moment is

    h(c) = (1/2pi) * sum_{j>=1} w_j(c) beta_{2j}(P) / den(P),

with w_j(c) = (-1)^j 2 theta^(2j) c^(2j+1) / (2j+1), beta_j the integral of
(1-x)^3 B(j; x) and den(P) the second-moment shape factor. If h(c) < 1 then
lambda > c/pi (on RH).

Both beta_j and den are quadratic forms in P built from the convolution
transforms, so they are evaluated exactly and also exposed as Gram matrices
over the monomials x^2..x^M for the optimizer.
"""

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..models import BetaTerm, RatioReport, SeriesTerm
from .errors import DegenerateDenominator, TruncationFailure
from .linalg import RationalMatrix, freeze, ldl_decompose, quadratic_value, to_float_array
from .ratpoly import (
    ExactRational,
    RatPoly,
    RationalLike,
    as_rational,
    convolve_power,
    factorial,
    integrate_unit,
    mul,
    shifted_kernel_expand,
    weighted_pairing,
)

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
DEFAULT_TOL = 1e-14
DEFAULT_SERIES_CAP = 60

# a_2..a_6 of the degree-six mollifier with h(2.9 pi) = 0.99725...
DEGREE_SIX_MOLLIFIER = (1000, -9332, 30134, -40475, 19292)

CUBIC_WEIGHT = RatPoly([1, -3, 3, -1])


class ThetaParam(BaseModel):
    """Mollifier length exponent theta, with y = T^theta."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    theta: ExactRational = Field(default=HALF, description="Exponent in (0, 1/2]")

    @field_validator("theta", mode="after")
    @classmethod
    def validate_range(cls, v):
        """theta must lie in (0, 1/2]."""
        if not 0 < v <= HALF:
            raise ValueError(f"theta must lie in (0, 1/2], got {v}")
        return v

    @classmethod
    def from_inverse(cls, theta_inv: object) -> "ThetaParam":
        inverse = as_rational(theta_inv)
        if inverse == 0:
            raise ValueError("theta_inv must be nonzero")
        return cls(theta=1 / inverse)

    @property
    def theta_inv(self) -> Fraction:
        return 1 / self.theta

    @property
    def is_half(self) -> bool:
        return self.theta == HALF


class MollifierSpec(BaseModel):
    """
    Admissible mollifier shape P(x) = sum_{k=2}^{M} a_k x^k.

    Indices 0 and 1 are absent, so P(0) = P'(0) = 0 holds by construction.
    ``coefficients`` holds a_2..a_M in order; trailing zeros are kept so
    that M is the declared degree bound.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficients: tuple[ExactRational, ...] = Field(..., description="Coefficients a_2..a_M")

    @field_validator("coefficients", mode="after")
    @classmethod
    def validate_nonzero(cls, v):
        """At least one coefficient, not all zero."""
        if not v:
            raise ValueError("a mollifier needs at least the coefficient a_2 (M >= 2)")
        if all(c == 0 for c in v):
            raise ValueError("the zero polynomial is not an admissible mollifier")
        return v

    @classmethod
    def from_sequence(cls, coefficients: Iterable[object]) -> "MollifierSpec":
        return cls(coefficients=tuple(coefficients))

    @classmethod
    def from_mapping(cls, coefficients: Mapping[int, object]) -> "MollifierSpec":
        """Build from {k: a_k}; keys must be at least 2."""
        if not coefficients:
            raise ValueError("a mollifier needs at least one coefficient")
        low = min(coefficients)
        if low < 2:
            raise ValueError(f"coefficient index {low} violates P(0) = P'(0) = 0")
        top = max(coefficients)
        return cls(coefficients=tuple(coefficients.get(k, 0) for k in range(2, top + 1)))

    @property
    def M(self) -> int:
        return len(self.coefficients) + 1

    def as_mapping(self) -> dict[int, Fraction]:
        return {k: a for k, a in enumerate(self.coefficients, start=2)}

    def polynomial(self) -> RatPoly:
        return RatPoly((0, 0) + self.coefficients)

    def scaled(self, s: RationalLike) -> "MollifierSpec":
        s = as_rational(s)
        if s == 0:
            raise ValueError("scaling by zero gives an inadmissible mollifier")
        return MollifierSpec(coefficients=tuple(s * a for a in self.coefficients))

    def vector(self) -> np.ndarray:
        """Float coefficient vector (a_2..a_M)."""
        return np.array([float(a) for a in self.coefficients], dtype=float)


MollifierLike = Union[MollifierSpec, RatPoly]

# Linear maps of P that enter the quadratic forms:
# ("P", r) is the transform P_r, ("K", k) the kernel integral K_k.
LinearMap = tuple[str, int]


@dataclass(frozen=True)
class QuadraticTerm:
    """weight * integral_0^1 (1-x)^3 left(P)(x) right(P)(x) dx."""

    weight: Fraction
    left: LinearMap
    right: LinearMap


def _apply(op: LinearMap, p: RatPoly, theta_inv: Fraction) -> RatPoly:
    kind, order = op
    if kind == "P":
        return convolve_power(p, order)
    return shifted_kernel_expand(p, order, theta_inv)


@lru_cache(maxsize=None)
def _monomial_image(op: LinearMap, k: int, theta_inv: Fraction) -> tuple[Fraction, ...]:
    return _apply(op, RatPoly.monomial(k), theta_inv).coeffs


def beta_terms(j: int, theta: Fraction) -> tuple[QuadraticTerm, ...]:
    """The six terms of B(j; u) as weighted products of linear maps of P."""
    if j < 1:
        raise ValueError(f"B(j; u) is defined for j >= 1, got {j}")
    return (
        QuadraticTerm(Fraction(-2, factorial(j + 2)), ("P", 1), ("P", j + 2)),
        QuadraticTerm(2 * theta / factorial(j + 2), ("P", 2), ("P", j + 2)),
        QuadraticTerm(4 * theta / factorial(j + 3), ("P", 1), ("P", j + 3)),
        QuadraticTerm(-theta / factorial(j + 2), ("P", 1), ("K", j + 2)),
        QuadraticTerm(theta / factorial(j + 1), ("P", 2), ("K", j + 1)),
        QuadraticTerm(-theta / (6 * factorial(j)), ("P", 3), ("K", j)),
    )


def denominator_terms(theta: Fraction) -> tuple[QuadraticTerm, ...]:
    """(1/2)(theta^-1 P_1^2 - 2 P_1 P_2)."""
    return (
        QuadraticTerm(1 / (2 * theta), ("P", 1), ("P", 1)),
        QuadraticTerm(Fraction(-1), ("P", 1), ("P", 2)),
    )


def _as_polynomial(p: MollifierLike) -> RatPoly:
    return p.polynomial() if isinstance(p, MollifierSpec) else p


def _theta(theta: Optional[ThetaParam]) -> ThetaParam:
    return theta if theta is not None else ThetaParam()


def quadratic_functional(
    terms: Sequence[QuadraticTerm], p: MollifierLike, theta_inv: Fraction
) -> Fraction:
    """Exact value of sum_t weight_t * integral (1-x)^3 left_t(P) right_t(P)."""
    poly = _as_polynomial(p)
    images: dict[LinearMap, RatPoly] = {}
    total = Fraction(0)
    for term in terms:
        for op in (term.left, term.right):
            if op not in images:
                images[op] = _apply(op, poly, theta_inv)
        total += term.weight * weighted_pairing(images[term.left].coeffs, images[term.right].coeffs)
    return total


def gram_matrix(terms: Sequence[QuadraticTerm], M: int, theta_inv: Fraction) -> RationalMatrix:
    """
    Polarized Gram matrix of a quadratic functional over x^2..x^M.

    Entry (k, l) is (1/2) sum_t weight_t [<L_t x^k, R_t x^l> + <L_t x^l, R_t x^k>],
    which is exactly (1/4)[q(x^k + x^l) - q(x^k - x^l)].
    """
    degrees = list(range(2, M + 1))
    n = len(degrees)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for a, k in enumerate(degrees):
        for b in range(a, n):
            l = degrees[b]
            total = Fraction(0)
            for term in terms:
                cross = weighted_pairing(
                    _monomial_image(term.left, k, theta_inv),
                    _monomial_image(term.right, l, theta_inv),
                ) + weighted_pairing(
                    _monomial_image(term.left, l, theta_inv),
                    _monomial_image(term.right, k, theta_inv),
                )
                total += term.weight * cross
            rows[a][b] = rows[b][a] = total / 2
    return freeze(rows)


@lru_cache(maxsize=None)
def beta_matrix(j: int, M: int, theta: Fraction) -> RationalMatrix:
    """Gram matrix of beta_j over x^2..x^M."""
    return gram_matrix(beta_terms(j, theta), M, 1 / theta)


@lru_cache(maxsize=None)
def denominator_matrix(M: int, theta: Fraction) -> RationalMatrix:
    """Gram matrix of the second-moment shape factor over x^2..x^M."""
    return gram_matrix(denominator_terms(theta), M, 1 / theta)


@lru_cache(maxsize=None)
def denominator_factor(M: int, theta: Fraction) -> tuple[RationalMatrix, tuple[Fraction, ...]]:
    """Exact LDL^T factor of the denominator Gram matrix; raises NotPositiveDefinite."""
    return ldl_decompose(denominator_matrix(M, theta))


def denominator_poly(p: MollifierLike, theta: Optional[ThetaParam] = None) -> RatPoly:
    """(1-x)^3 (theta^-1 P_1(x)^2 - 2 P_1(x) P_2(x)) as an exact polynomial."""
    theta = _theta(theta)
    poly = _as_polynomial(p)
    p1 = convolve_power(poly, 1)
    p2 = convolve_power(poly, 2)
    inner = mul(p1, p1).scale(theta.theta_inv) - mul(p1, p2).scale(2)
    return mul(CUBIC_WEIGHT, inner)


def theta_denominator(p: MollifierLike, theta: Optional[ThetaParam] = None) -> Fraction:
    """
    Second-moment shape factor (1/2) integral of denominator_poly at any theta.

    Raises:
        DegenerateDenominator: If the value is not strictly positive
    """
    value = integrate_unit(denominator_poly(p, theta)) / 2
    if value <= 0:
        raise DegenerateDenominator(
            f"second-moment factor is {float(value):.6e}; the mollifier is inadmissible"
        )
    return value


def h_denominator(p: MollifierLike) -> Fraction:
    """integral_0^1 (1-x)^3 (P_1^2 - P_1 P_2) dx, the theta = 1/2 denominator of h."""
    return theta_denominator(p, ThetaParam())


def b_poly(j: int, p: MollifierLike, theta: Optional[ThetaParam] = None) -> RatPoly:
    """
    B(j; u) as an exact polynomial in u.

    Args:
        j: Index, at least 1
        p: Mollifier shape
        theta: Length exponent (default 1/2)

    Returns:
        Sum of the six weighted products of transforms and kernel integrals
    """
    theta = _theta(theta)
    poly = _as_polynomial(p)
    images: dict[LinearMap, RatPoly] = {}
    result = RatPoly()
    for term in beta_terms(j, theta.theta):
        for op in (term.left, term.right):
            if op not in images:
                images[op] = _apply(op, poly, theta.theta_inv)
        result = result + mul(images[term.left], images[term.right]).scale(term.weight)
    return result


def beta_coefficient(j: int, p: MollifierLike, theta: Optional[ThetaParam] = None) -> Fraction:
    """beta_j = integral_0^1 (1-x)^3 B(j; x) dx, exactly."""
    theta = _theta(theta)
    return quadratic_functional(beta_terms(j, theta.theta), p, theta.theta_inv)


def series_weight(
    j: int,
    c: Union[float, Fraction],
    theta: Optional[ThetaParam] = None,
    generalized_theta: bool = False,
) -> Fraction:
    """
    Exact series weight (-1)^j 2 theta^(2j) c^(2j+1) / (2j+1).

    At theta = 1/2 this is (-1)^j c^(2j+1) / (2^(2j-1) (2j+1)). Other values of
    theta use an inferred generalization and must be requested explicitly.
    """
    theta = _theta(theta)
    if j < 1:
        raise ValueError(f"series index must be at least 1, got {j}")
    if not theta.is_half and not generalized_theta:
        raise ValueError("theta != 1/2 requires generalized_theta=True")
    exact_c = c if isinstance(c, Fraction) else Fraction(c)
    weight = 2 * theta.theta ** (2 * j) * exact_c ** (2 * j + 1) / (2 * j + 1)
    return -weight if j % 2 else weight


def _validate_c(c: float) -> None:
    if not (math.isfinite(c) and c > 0):
        raise ValueError(f"gap parameter c must be positive and finite, got {c}")


def h_ratio(
    p: MollifierSpec,
    c: float,
    theta: Optional[ThetaParam] = None,
    tol: float = DEFAULT_TOL,
    *,
    generalized_theta: bool = False,
    series_cap: int = DEFAULT_SERIES_CAP,
    extra_terms: int = 0,
) -> RatioReport:
    """
    Evaluate h(c) for one mollifier with full provenance.

    Each summand w_j beta_{2j} / den is formed exactly and only then rounded,
    so the report is identical for P and s*P. The series stops at the first
    J with |term_J| < tol * max(1, |partial sum|); ``extra_terms`` keeps
    summing past that index.

    Args:
        p: Mollifier shape
        c: Gap parameter (positive)
        theta: Length exponent (default 1/2)
        tol: Relative truncation tolerance
        generalized_theta: Allow theta != 1/2
        series_cap: Largest series index before giving up
        extra_terms: Additional terms summed after the truncation index

    Returns:
        RatioReport with h, the denominator, every beta_{2j} and every summand

    Raises:
        DegenerateDenominator: If the second-moment factor is not positive
        TruncationFailure: If the tolerance is not met by series_cap
    """
    _validate_c(c)
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    theta = _theta(theta)
    if not theta.is_half and not generalized_theta:
        raise ValueError("theta != 1/2 requires generalized_theta=True")

    den = theta_denominator(p, theta)
    exact_c = Fraction(c)
    two_pi = 2 * math.pi

    partial = Fraction(0)
    betas: list[BetaTerm] = []
    terms: list[SeriesTerm] = []
    j_used: Optional[int] = None
    j = 0
    while j_used is None or j < j_used + extra_terms:
        j += 1
        if j_used is None and j > series_cap:
            raise TruncationFailure(
                f"h({c}) series did not reach tolerance {tol} within {series_cap} terms"
            )
        beta = beta_coefficient(2 * j, p, theta)
        summand = series_weight(j, exact_c, theta, generalized_theta) * (beta / den)
        partial += summand
        term = float(summand) / two_pi
        betas.append(BetaTerm(j=2 * j, value=beta))
        terms.append(SeriesTerm(j=j, value=term))
        if j_used is None and abs(term) < tol * max(1.0, abs(float(partial) / two_pi)):
            j_used = j

    h = float(partial) / two_pi
    logger.debug(f"h({c:.12g}) = {h:.15g} with J_used={j_used} (summed {j} terms)")
    return RatioReport(
        c=c,
        theta=theta.theta,
        generalized_theta=generalized_theta,
        coefficients=list(p.coefficients),
        denominator=den,
        beta=betas,
        terms=terms,
        J_used=j_used,
        h=h,
        lambda_implied=c / math.pi if h < 1 else None,
    )


def h_scan(
    p: MollifierSpec,
    c_values: Iterable[float],
    theta: Optional[ThetaParam] = None,
    tol: float = DEFAULT_TOL,
    *,
    generalized_theta: bool = False,
    series_cap: int = DEFAULT_SERIES_CAP,
) -> list[tuple[float, float]]:
    """h(c) for one mollifier over a grid of gap parameters, as (c, h) pairs."""
    points = []
    for c in c_values:
        report = h_ratio(
            p, c, theta, tol, generalized_theta=generalized_theta, series_cap=series_cap
        )
        points.append((c, report.h))
    return points


@dataclass(frozen=True, eq=False)
class QuadForms:
    """
    h(c) as a generalized Rayleigh quotient a^T N a / a^T D a over x^2..x^M.

    ``N_exact`` is sum_j w_j N_j without the 1/2pi factor; the float ``N``
    carries ``numerator_scale`` (1/2pi for the gap functional).
    """

    M: int
    c: float
    theta: Fraction
    N: np.ndarray
    D: np.ndarray
    N_exact: RationalMatrix
    D_exact: RationalMatrix
    N_terms: tuple[RationalMatrix, ...] = ()
    weights: tuple[Fraction, ...] = ()
    J_used: int = 0
    numerator_scale: float = 1 / (2 * math.pi)
    D_factor: tuple[RationalMatrix, tuple[Fraction, ...]] = field(default=((), ()))

    @classmethod
    def from_matrices(
        cls,
        N: Sequence[Sequence[RationalLike]],
        D: Sequence[Sequence[RationalLike]],
        numerator_scale: float = 1.0,
    ) -> "QuadForms":
        """Wrap arbitrary symmetric rational matrices (D must be positive definite)."""
        n_exact = freeze([[as_rational(x) for x in row] for row in N])
        d_exact = freeze([[as_rational(x) for x in row] for row in D])
        if len(n_exact) != len(d_exact) or not n_exact:
            raise ValueError("N and D must be non-empty and of equal size")
        return cls(
            M=len(n_exact) + 1,
            c=0.0,
            theta=HALF,
            N=to_float_array(n_exact) * numerator_scale,
            D=to_float_array(d_exact),
            N_exact=n_exact,
            D_exact=d_exact,
            numerator_scale=numerator_scale,
            D_factor=ldl_decompose(d_exact),
        )

    @property
    def size(self) -> int:
        return len(self.D_exact)

    def ratio(self, a: Sequence[Union[float, Fraction]]) -> float:
        """Exact Rayleigh quotient a^T N a / a^T D a, rounded once."""
        vector = [x if isinstance(x, Fraction) else Fraction(float(x)) for x in a]
        denominator = quadratic_value(self.D_exact, vector)
        if denominator <= 0:
            raise DegenerateDenominator("a^T D a is not positive for this vector")
        return float(quadratic_value(self.N_exact, vector) / denominator) * self.numerator_scale


def quad_forms(
    M: int,
    c: float,
    theta: Optional[ThetaParam] = None,
    tol: float = DEFAULT_TOL,
    *,
    generalized_theta: bool = False,
    series_cap: int = DEFAULT_SERIES_CAP,
) -> QuadForms:
    """
    Build the Gram matrices of the numerator and denominator of h(c).

    The numerator sum over j stops once max |w_j N_j| < tol * max |partial sum|.

    Raises:
        NotPositiveDefinite: If the denominator matrix is not positive definite
        TruncationFailure: If the series does not settle within series_cap
    """
    if M < 2:
        raise ValueError(f"degree bound M must be at least 2, got {M}")
    _validate_c(c)
    theta = _theta(theta)
    if not theta.is_half and not generalized_theta:
        raise ValueError("theta != 1/2 requires generalized_theta=True")

    d_exact = denominator_matrix(M, theta.theta)
    factor = denominator_factor(M, theta.theta)

    n = M - 1
    exact_c = Fraction(c)
    tolerance = Fraction(tol)
    acc = [[Fraction(0)] * n for _ in range(n)]
    n_terms: list[RationalMatrix] = []
    weights: list[Fraction] = []
    j = 0
    while True:
        j += 1
        if j > series_cap:
            raise TruncationFailure(
                f"numerator form at c={c} did not settle within {series_cap} terms"
            )
        weight = series_weight(j, exact_c, theta, generalized_theta)
        n_j = beta_matrix(2 * j, M, theta.theta)
        n_terms.append(n_j)
        weights.append(weight)
        for a in range(n):
            for b in range(a, n):
                acc[a][b] += weight * n_j[a][b]
                if b != a:
                    acc[b][a] = acc[a][b]
        step = abs(weight) * max(abs(x) for row in n_j for x in row)
        size = max(abs(x) for row in acc for x in row)
        if step < tolerance * size:
            break

    n_exact = freeze(acc)
    scale = 1 / (2 * math.pi)
    logger.debug(f"quad_forms(M={M}, c={c:.12g}): J_used={j}")
    return QuadForms(
        M=M,
        c=c,
        theta=theta.theta,
        N=to_float_array(n_exact) * scale,
        D=to_float_array(d_exact),
        N_exact=n_exact,
        D_exact=d_exact,
        N_terms=tuple(n_terms),
        weights=tuple(weights),
        J_used=j,
        numerator_scale=scale,
        D_factor=factor,
    )
