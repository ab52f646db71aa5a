"""
Exact rational univariate polynomials.

Every integral that enters the gap functional is the integral of a polynomial
on [0, 1], so the whole pipeline runs on exact rationals and only the final
scalar is ever rounded. This module provides the polynomial type and the
convolution transform

    P_r(x) = integral_0^x t^r P(x - t) dt,

which maps x^k to r! k! / (r + k + 1)! x^(r + k + 1).
"""

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import lru_cache
from math import comb
from math import factorial as _factorial
from typing import Annotated, Union

from pydantic import BeforeValidator, PlainSerializer

logger = logging.getLogger(__name__)

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def as_rational(value: object) -> Fraction:
    """
    Coerce a user-facing value to an exact rational.

    Strings such as "1/3" or "0.25" are parsed exactly; floats convert to
    their exact binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational number: {value!r}") from e
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


# Fraction field for pydantic models; serializes as "p/q" in JSON.
ExactRational = Annotated[
    Fraction,
    BeforeValidator(as_rational),
    PlainSerializer(str, return_type=str, when_used="json"),
]


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    """Exact n! (memoized)."""
    return _factorial(n)


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k) (memoized)."""
    return comb(n, k)


@lru_cache(maxsize=None)
def beta_weight(r: int, k: int) -> Fraction:
    """r! k! / (r + k + 1)!: the image coefficient of x^k under the order-r transform."""
    return Fraction(factorial(r) * factorial(k), factorial(r + k + 1))


class RatPoly:
    """
    Immutable polynomial with exact rational coefficients.

    ``coeffs[k]`` is the coefficient of x^k. Trailing zeros are stripped, so the
    zero polynomial has an empty coefficient tuple and structural equality is
    polynomial equality.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        values = [Fraction(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self._coeffs: tuple[Fraction, ...] = tuple(values)

    @classmethod
    def zero(cls) -> "RatPoly":
        return cls()

    @classmethod
    def constant(cls, value: RationalLike) -> "RatPoly":
        return cls([value])

    @classmethod
    def monomial(cls, k: int, coeff: RationalLike = 1) -> "RatPoly":
        """coeff * x^k."""
        if k < 0:
            raise ValueError(f"monomial degree must be non-negative, got {k}")
        return cls([0] * k + [coeff])

    @classmethod
    def from_mapping(cls, coeffs: dict[int, RationalLike]) -> "RatPoly":
        """Build from a sparse {degree: coefficient} mapping."""
        if not coeffs:
            return cls()
        dense: list[RationalLike] = [0] * (max(coeffs) + 1)
        for k, value in coeffs.items():
            dense[k] = value
        return cls(dense)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatPoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "RatPoly(0)"
        terms = [f"({c})*x^{k}" for k, c in enumerate(self._coeffs) if c != 0]
        return f"RatPoly({' + '.join(terms)})"

    def __add__(self, other: "RatPoly") -> "RatPoly":
        if not isinstance(other, RatPoly):
            return NotImplemented
        return add(self, other)

    def __neg__(self) -> "RatPoly":
        return RatPoly(-c for c in self._coeffs)

    def __sub__(self, other: "RatPoly") -> "RatPoly":
        if not isinstance(other, RatPoly):
            return NotImplemented
        return add(self, -other)

    def __mul__(self, other: Union["RatPoly", RationalLike]) -> "RatPoly":
        if isinstance(other, RatPoly):
            return mul(self, other)
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: RationalLike) -> "RatPoly":
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "RatPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = RatPoly.constant(1)
        for _ in range(n):
            result = mul(result, self)
        return result

    def scale(self, s: RationalLike) -> "RatPoly":
        s = Fraction(s)
        return RatPoly(s * c for c in self._coeffs)

    def derivative(self) -> "RatPoly":
        return RatPoly(k * c for k, c in enumerate(self._coeffs) if k > 0)

    def __call__(self, x: RationalLike) -> Fraction:
        return evaluate(self, x)


def add(p: RatPoly, q: RatPoly) -> RatPoly:
    """Coefficient-wise exact sum."""
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    return RatPoly([a[k] + (b[k] if k < len(b) else 0) for k in range(len(a))])


def mul(p: RatPoly, q: RatPoly) -> RatPoly:
    """Exact Cauchy product."""
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return RatPoly()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return RatPoly(out)


def evaluate(p: RatPoly, x: RationalLike) -> Fraction:
    """Exact Horner evaluation at a rational point."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def evaluate_float(p: RatPoly, x: float) -> float:
    """Horner evaluation in floating point."""
    acc = 0.0
    for c in reversed(p.coeffs):
        acc = acc * x + float(c)
    return acc


def convolve_power(p: RatPoly, r: int) -> RatPoly:
    """
    The order-r convolution transform P_r(x) = integral_0^x t^r P(x - t) dt.

    Args:
        p: Polynomial P
        r: Non-negative order

    Returns:
        P_r with exact coefficients; x^k maps to r! k!/(r+k+1)! x^(r+k+1)
    """
    if r < 0:
        raise ValueError(f"transform order must be non-negative, got {r}")
    if p.is_zero():
        return RatPoly()
    out = [Fraction(0)] * (r + 1 + len(p.coeffs))
    for k, c in enumerate(p.coeffs):
        if c:
            out[r + k + 1] = c * beta_weight(r, k)
    return RatPoly(out)


def integrate_unit(p: RatPoly) -> Fraction:
    """Exact integral of p over [0, 1]."""
    return sum((c / (k + 1) for k, c in enumerate(p.coeffs)), Fraction(0))


def shifted_kernel_expand(p: RatPoly, k: int, theta_inv: RationalLike) -> RatPoly:
    """
    The t-integral integral_0^u t (theta_inv - t)^k P(u - t) dt as a polynomial in u.

    Expanding (theta_inv - t)^k binomially turns each term into a transform:
    sum_i C(k, i) theta_inv^(k-i) (-1)^i P_{i+1}(u).
    """
    if k < 0:
        raise ValueError(f"kernel power must be non-negative, got {k}")
    if p.is_zero():
        return RatPoly()
    theta_inv = Fraction(theta_inv)
    out = [Fraction(0)] * (k + 2 + len(p.coeffs))
    for i in range(k + 1):
        weight = binomial(k, i) * theta_inv ** (k - i)
        if i % 2:
            weight = -weight
        for m, c in enumerate(p.coeffs):
            if c:
                out[i + m + 2] += weight * c * beta_weight(i + 1, m)
    return RatPoly(out)


def unit_cubic_moment(n: int) -> Fraction:
    """integral_0^1 (1 - x)^3 x^n dx = 3! n! / (n + 4)!."""
    return beta_weight(3, n)


def weighted_pairing(f: Sequence[Fraction], g: Sequence[Fraction]) -> Fraction:
    """
    integral_0^1 (1 - x)^3 f(x) g(x) dx for coefficient sequences f and g.

    Equivalent to integrate_unit((1-x)^3 * f * g) but skips building the product.
    """
    total = Fraction(0)
    for a, fa in enumerate(f):
        if not fa:
            continue
        for b, gb in enumerate(g):
            if gb:
                total += fa * gb * unit_cubic_moment(a + b)
    return total
