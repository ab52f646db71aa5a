"""Tests for the Euler-product constants and their local identities."""

import math
from fractions import Fraction

import pytest
import sympy

from zeta_large_gaps.core.constants import (
    CONSTANT_NAMES,
    IDENTITIES,
    TAIL_CONSTANTS,
    _local_factor_table,
    constants_report,
    euler_product,
    is_prime,
    local_factors,
    prime_sieve,
    tail_bound,
    verify_identities,
)
from zeta_large_gaps.core.errors import NotPrime, UnknownConstant


class TestPrimes:
    """Tests for primality and the sieve."""

    def test_sieve_count_to_one_million(self):
        """Test that there are 78498 primes below one million."""
        assert len(prime_sieve(10**6)) == 78498

    def test_small_sieve(self):
        """Test the sieve on small limits."""
        assert prime_sieve(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert prime_sieve(1).tolist() == []

    def test_sieve_agrees_with_trial_division(self):
        """Test the sieve against trial division up to 2000."""
        primes = set(prime_sieve(2000).tolist())
        assert primes == {n for n in range(2001) if is_prime(n)}


class TestLocalFactors:
    """Tests for the exact local factors."""

    def test_values_at_two(self):
        """Test the exact local factors at p = 2."""
        factors = local_factors(2)
        assert factors.A == Fraction(5, 256)
        assert factors.C == Fraction(1, 2)
        assert factors.D == Fraction(5, 64)
        assert factors.V1 == 2
        assert factors.U1 == 2
        assert factors.U2 == Fraction(7, 16)
        assert factors.W == Fraction(5, 224)

    @pytest.mark.parametrize("p", [2, 3, 5, 7, 97, 7919])
    def test_identities_at_single_primes(self, p):
        """Test both identities exactly at single primes."""
        factors = local_factors(p)
        assert factors.C**2 * factors.D == factors.A
        assert factors.U1 * factors.U2 * factors.W == factors.A

    @pytest.mark.parametrize("n", [0, 1, 4, 9, 100])
    def test_composite_rejected(self, n):
        """Test that composites and units raise NotPrime."""
        with pytest.raises(NotPrime):
            local_factors(n)

    def test_not_prime_is_value_error(self):
        """Test that NotPrime is also a ValueError."""
        with pytest.raises(ValueError):
            local_factors(15)

    def test_factors_lie_in_open_interval(self):
        """Test every factor lies in (0, 2) for odd p <= 1000; U1 reaches 2 at p = 2."""
        assert local_factors(2).U1 == 2
        for p in prime_sieve(1000).tolist()[1:]:
            factors = local_factors(p)
            for name in CONSTANT_NAMES:
                assert 0 < getattr(factors, name) < 2

    def test_tail_constants_bound_log_factors(self):
        """Test p^2 |log f_p| <= K for every prime in (100, 5000]."""
        for p in prime_sieve(5000).tolist():
            if p <= 100:
                continue
            factors = local_factors(p)
            for name, bound in TAIL_CONSTANTS.items():
                assert p * p * abs(math.log(getattr(factors, name))) <= bound


class TestSymbolicFactors:
    """Tests of the local factors as rational functions of x = 1/p."""

    x = sympy.Symbol("x", positive=True)

    def table(self):
        return _local_factor_table(1 / self.x)

    def test_cd_identity_holds_identically(self):
        """Test C^2 D = A as an identity of rational functions."""
        t = self.table()
        assert sympy.cancel(t["C"] ** 2 * t["D"] - t["A"]) == 0

    def test_uw_identity_holds_identically(self):
        """Test U1 U2 W = A as an identity of rational functions."""
        t = self.table()
        assert sympy.cancel(t["U1"] * t["U2"] * t["W"] - t["A"]) == 0

    @pytest.mark.parametrize("name", CONSTANT_NAMES)
    def test_log_factors_start_at_second_order(self, name):
        """Test log f = c2 x^2 + O(x^3) with |c2| below the tail constant."""
        expansion = sympy.series(sympy.log(self.table()[name]), self.x, 0, 3).removeO()
        expansion = sympy.expand(expansion)
        assert expansion.coeff(self.x, 0) == 0
        assert expansion.coeff(self.x, 1) == 0
        assert abs(expansion.coeff(self.x, 2)) < TAIL_CONSTANTS[name]

    def test_known_expansion_of_a(self):
        """Test that log A_p starts -36x^2 + 168x^3."""
        expansion = sympy.series(sympy.log(self.table()["A"]), self.x, 0, 4).removeO()
        assert sympy.expand(expansion - (-36 * self.x**2 + 168 * self.x**3)) == 0


class TestEulerProduct:
    """Tests for truncated Euler products."""

    def test_a_at_one_million(self):
        """Test the product for A over primes up to one million."""
        result = euler_product("A", 10**6)
        assert 0 < result.value < 1
        assert result.tail_bound < 1e-4
        assert result.prime_count == 78498
        assert result.cutoff == 10**6

    def test_a_matches_plain_loop(self):
        """Test the vectorized product against a prime-by-prime loop over sympy primes."""
        primes = [int(p) for p in sympy.primerange(2, 10**6 + 1)]
        logs = [math.log((1 + 8 / p) * (1 - 1 / p) ** 8) for p in primes]
        expected = math.exp(math.fsum(logs))
        assert len(logs) == 78498
        assert euler_product("A", 10**6).value == pytest.approx(expected, rel=1e-12)

    def test_cd_identity_lifts_to_products(self):
        """Test that C^2 D = A holds for the truncated products."""
        a = euler_product("A", 10**4).value
        c = euler_product("C", 10**4).value
        d = euler_product("D", 10**4).value
        assert c * c * d == pytest.approx(a, rel=1e-12)

    def test_uw_identity_lifts_to_products(self):
        """Test that U1 U2 W = A holds for the truncated products."""
        values = {name: euler_product(name, 10**4).value for name in ("A", "U1", "U2", "W")}
        assert values["U1"] * values["U2"] * values["W"] == pytest.approx(values["A"], rel=1e-12)

    @pytest.mark.parametrize("name", CONSTANT_NAMES)
    def test_tail_bound_covers_doubling(self, name):
        """Test |log value(2 cutoff) - log value(cutoff)| <= tail_bound(cutoff)."""
        small = euler_product(name, 1000)
        large = euler_product(name, 2000)
        assert abs(math.log(large.value / small.value)) <= small.tail_bound

    def test_tail_bound(self):
        """Test the tail bound K / cutoff."""
        assert tail_bound("A", 10**6) == pytest.approx(40 / 10**6)
        assert tail_bound("U1", 100) == pytest.approx(0.02)

    def test_unknown_constant(self):
        """Test that an unknown name raises UnknownConstant, a KeyError."""
        with pytest.raises(UnknownConstant) as exc_info:
            euler_product("B", 1000)
        assert isinstance(exc_info.value, KeyError)
        assert "unknown constant 'B'" in str(exc_info.value)

    def test_cutoff_below_minimum(self):
        """Test that a cutoff below 100 is rejected."""
        with pytest.raises(ValueError):
            euler_product("A", 99)


class TestIdentityReport:
    """Tests for the per-prime identity checks and the combined report."""

    def test_all_primes_to_ten_thousand(self):
        """Test that both identities pass for every prime up to 10^4."""
        checks = verify_identities(10**4)
        assert [check.identity for check in checks] == list(IDENTITIES)
        for check in checks:
            assert check.passed
            assert check.first_failure is None
            assert check.primes_checked == 1229

    def test_constants_report(self):
        """Test the combined report and its JSON form."""
        report = constants_report(cutoff=1000, prime_limit=100, names=("A", "C"))
        assert [result.name for result in report.results] == ["A", "C"]
        assert report.all_passed
        payload = report.model_dump(mode="json")
        assert payload["identities"][0]["prime_limit"] == 100
