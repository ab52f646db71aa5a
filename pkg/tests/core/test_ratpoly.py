"""Tests for exact rational polynomials and the convolution transform."""

import random
from fractions import Fraction

import pytest
from scipy.integrate import quad

from zeta_large_gaps.core.ratpoly import (
    RatPoly,
    add,
    as_rational,
    beta_weight,
    convolve_power,
    evaluate,
    evaluate_float,
    integrate_unit,
    mul,
    shifted_kernel_expand,
    weighted_pairing,
)

X = RatPoly.monomial(1)
DEGREE_SIX = RatPoly([0, 0, 1000, -9332, 30134, -40475, 19292])


def random_poly(rng: random.Random, degree: int, vanish_at_zero: bool = False) -> RatPoly:
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(degree + 1)]
    if vanish_at_zero:
        coeffs[0] = Fraction(0)
    return RatPoly(coeffs)


class TestRatPoly:
    """Tests for construction, equality and arithmetic."""

    def test_trailing_zeros_are_stripped(self):
        """Test that trailing zero coefficients never survive construction."""
        assert RatPoly([1, 2, 0, 0]).coeffs == (Fraction(1), Fraction(2))
        assert RatPoly([0, 0]).is_zero()
        assert RatPoly().degree == -1

    def test_additive_inverse_is_zero(self):
        """Test x^2 + (-x^2) = 0."""
        square = RatPoly.monomial(2)
        assert add(square, -square) == RatPoly.zero()
        assert add(square, -square).coeffs == ()

    def test_disjoint_support(self):
        """Test x + x^3."""
        assert add(X, RatPoly.monomial(3)) == RatPoly([0, 1, 0, 1])

    def test_cancellation_of_leading_coefficients(self):
        """Test (1000x^2 - 9332x^3) + 9332x^3 = 1000x^2."""
        p = RatPoly([0, 0, 1000, -9332])
        assert p + RatPoly.monomial(3, 9332) == RatPoly.monomial(2, 1000)

    def test_multiplication(self):
        """Test monomial products, the annihilator and a difference of squares."""
        assert mul(RatPoly.monomial(2), RatPoly.monomial(3)) == RatPoly.monomial(5)
        assert mul(DEGREE_SIX, RatPoly.zero()).is_zero()
        assert mul(RatPoly([1, 1]), RatPoly([1, -1])) == RatPoly([1, 0, -1])

    def test_scalar_multiplication_and_power(self):
        """Test scalar products and integer powers."""
        assert 3 * X == RatPoly([0, 3])
        assert X * Fraction(1, 2) == RatPoly([0, Fraction(1, 2)])
        assert RatPoly([1, -1]) ** 3 == RatPoly([1, -3, 3, -1])

    def test_evaluation(self):
        """Test exact and floating-point Horner evaluation."""
        assert evaluate(RatPoly.monomial(2), Fraction(1, 2)) == Fraction(1, 4)
        assert evaluate(RatPoly.zero(), Fraction(7, 3)) == 0
        assert evaluate(DEGREE_SIX, 1) == 619
        assert DEGREE_SIX(1) == 619
        assert evaluate_float(DEGREE_SIX, 0.5) == pytest.approx(float(evaluate(DEGREE_SIX, "1/2")))

    def test_from_mapping_and_derivative(self):
        """Test sparse construction and differentiation."""
        p = RatPoly.from_mapping({3: 2, 1: -1})
        assert p == RatPoly([0, -1, 0, 2])
        assert p.derivative() == RatPoly([-1, 0, 6])

    def test_negative_monomial_degree_rejected(self):
        """Test that a monomial of negative degree is rejected."""
        with pytest.raises(ValueError):
            RatPoly.monomial(-1)


class TestConvolvePower:
    """Tests for the transform P_r(x) = integral_0^x t^r P(x - t) dt."""

    def test_documented_examples(self):
        """Test the Beta-integral examples."""
        assert convolve_power(RatPoly.monomial(2), 1) == RatPoly.monomial(4, Fraction(1, 12))
        assert convolve_power(RatPoly.constant(1), 0) == X
        assert convolve_power(RatPoly.monomial(3), 2) == RatPoly.monomial(6, Fraction(1, 60))

    @pytest.mark.parametrize("r", range(0, 9))
    @pytest.mark.parametrize("k", [0, 1, 2, 5, 8])
    def test_monomial_law_against_quadrature(self, r, k):
        """Test r!k!/(r+k+1)! against adaptive quadrature at several points."""
        image = convolve_power(RatPoly.monomial(k), r)
        for x in (0.25, 0.5, 1.0):
            expected, _ = quad(lambda t: t**r * (x - t) ** k, 0.0, x, epsabs=0, epsrel=1e-13)
            assert evaluate_float(image, x) == pytest.approx(expected, rel=1e-10)

    def test_derivative_commutes_when_p_vanishes_at_zero(self):
        """Test d/dx P_r = (P')_r for random P with P(0) = 0."""
        rng = random.Random(7)
        for _ in range(20):
            p = random_poly(rng, rng.randint(1, 8), vanish_at_zero=True)
            r = rng.randint(0, 6)
            assert convolve_power(p, r).derivative() == convolve_power(p.derivative(), r)

    def test_linearity(self):
        """Test convolve_power(aP + bQ) = a convolve_power(P) + b convolve_power(Q)."""
        rng = random.Random(11)
        for _ in range(10):
            p, q = random_poly(rng, 6), random_poly(rng, 4)
            a, b = Fraction(rng.randint(-5, 5), 3), Fraction(rng.randint(-5, 5), 7)
            r = rng.randint(0, 5)
            lhs = convolve_power(p.scale(a) + q.scale(b), r)
            rhs = convolve_power(p, r).scale(a) + convolve_power(q, r).scale(b)
            assert lhs == rhs

    def test_outputs_are_canonical(self):
        """Test that the transform of zero is the canonical zero."""
        assert convolve_power(RatPoly.zero(), 3).coeffs == ()
        assert convolve_power(DEGREE_SIX, 2).coeffs[-1] != 0

    def test_beta_weight(self):
        """Test that the Beta weight is r!k!/(r+k+1)!."""
        assert beta_weight(1, 2) == Fraction(1, 12)
        assert beta_weight(3, 0) == Fraction(1, 4)

    def test_negative_order_rejected(self):
        """Test that a negative transform order is rejected."""
        with pytest.raises(ValueError):
            convolve_power(X, -1)


class TestIntegrateUnit:
    """Tests for exact integration over [0, 1]."""

    def test_examples(self):
        """Test exact unit integrals of small polynomials."""
        assert integrate_unit(X) == Fraction(1, 2)
        assert integrate_unit(RatPoly([1, -1]) ** 3) == Fraction(1, 4)
        assert integrate_unit(RatPoly.monomial(4, Fraction(1, 12))) == Fraction(1, 60)

    def test_square_integral_is_positive(self):
        """Test that the L2 form is strictly positive on nonzero polynomials."""
        rng = random.Random(3)
        for _ in range(20):
            p = random_poly(rng, rng.randint(0, 8))
            if p.is_zero():
                continue
            assert integrate_unit(mul(p, p)) > 0

    def test_weighted_pairing_matches_direct_integration(self):
        """Test the (1-x)^3 pairing against integrating the full product."""
        rng = random.Random(5)
        cubic = RatPoly([1, -3, 3, -1])
        for _ in range(10):
            f, g = random_poly(rng, 5), random_poly(rng, 7)
            expected = integrate_unit(mul(cubic, mul(f, g)))
            assert weighted_pairing(f.coeffs, g.coeffs) == expected


class TestShiftedKernelExpand:
    """Tests for integral_0^u t (theta_inv - t)^k P(u - t) dt."""

    def test_zero_power_is_first_transform(self):
        """Test that k=0 reduces to the first convolution transform."""
        assert shifted_kernel_expand(DEGREE_SIX, 0, 2) == convolve_power(DEGREE_SIX, 1)

    def test_first_power_on_square(self):
        """Test k=1, P=x^2, theta_inv=2 gives x^4/6 - x^5/30."""
        result = shifted_kernel_expand(RatPoly.monomial(2), 1, 2)
        assert result == RatPoly([0, 0, 0, 0, Fraction(1, 6), Fraction(-1, 30)])
        assert evaluate(result, 1) == Fraction(2, 15)

    @pytest.mark.parametrize("k", [0, 1, 3, 6])
    def test_against_quadrature(self, k):
        """Test the expansion against direct quadrature of the t-integral."""
        p = RatPoly([0, 0, 1, -2, Fraction(1, 2)])
        result = shifted_kernel_expand(p, k, 2)
        for u in (0.5, 1.0):
            expected, _ = quad(
                lambda t: t * (2 - t) ** k * evaluate_float(p, u - t),
                0.0,
                u,
                epsabs=0,
                epsrel=1e-13,
            )
            assert evaluate_float(result, u) == pytest.approx(expected, rel=1e-10, abs=1e-14)

    def test_zero_polynomial(self):
        """Test that the zero polynomial maps to zero."""
        assert shifted_kernel_expand(RatPoly.zero(), 4, 2).is_zero()

    def test_negative_power_rejected(self):
        """Test that a negative kernel power is rejected."""
        with pytest.raises(ValueError):
            shifted_kernel_expand(X, -1, 2)


class TestAsRational:
    """Tests for coercion of user input to exact rationals."""

    def test_accepted_forms(self):
        """Test that strings, integers and floats coerce exactly."""
        assert as_rational("1/3") == Fraction(1, 3)
        assert as_rational(" 0.25 ") == Fraction(1, 4)
        assert as_rational(-2) == Fraction(-2)
        assert as_rational(0.5) == Fraction(1, 2)

    def test_rejected_forms(self):
        """Test that text, booleans and lists are rejected."""
        with pytest.raises(ValueError):
            as_rational("abc")
        with pytest.raises(TypeError):
            as_rational(True)
        with pytest.raises(TypeError):
            as_rational([1])
