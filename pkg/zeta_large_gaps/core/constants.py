"""
Euler-product constants of the mollified moments.

Each constant is a product over primes of a local factor in x = 1/p. The
factors are written once, generically, so the same expressions run on exact
Fractions (for the per-prime identities C_p^2 D_p = A_p and
U1_p U2_p W_p = A_p) and on numpy arrays of primes (for the truncated
products).
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from ..models import ConstantsReport, EulerProductResult, IdentityCheck
from .errors import NotPrime, UnknownConstant

logger = logging.getLogger(__name__)

# Bounds on p^2 |log f_p| for p > 100, from the expansions
#   log A_p  = -36x^2 + 168x^3 + ...     log C_p  = -3x^2 + 2x^3 + ...
#   log D_p  = -30x^2 + 164x^3 + ...     log U1_p = x^2 + 2x^3 + ...
#   log U2_p = 2x^2 - 12x^3 + ...        log W_p  = -39x^2 + 178x^3 + ...
TAIL_CONSTANTS: dict[str, int] = {"A": 40, "C": 4, "D": 34, "U1": 2, "U2": 3, "W": 45}

CONSTANT_NAMES = tuple(TAIL_CONSTANTS)
MIN_CUTOFF = 100

IDENTITIES = ("C^2 D = A", "U1 U2 W = A")


def _local_factor_table(p: Any) -> dict[str, Any]:
    """All local factors at s = 0, alpha = 0 for p a Fraction or a float array."""
    x = 1 / p
    f = 1 - x
    v1 = 1 / (1 - 2 * f**2 / (p - 1))
    u1 = (1 / v1) / (1 - x) ** 2
    v2 = 1 / (1 + 2 * v1 * x)
    v3 = (1 + 2 * x) * v2
    v4 = 1 / (1 + 2 * v1 * x * (1 + 2 * x) * v2)
    u2 = (1 + 2 * v1 * x) * (1 / v4) * (1 - x) ** 4
    w = (1 + 2 * f * v1 * v3 * v4 * x + 4 * f**2 * v1 * v2 * v4 * x) * (1 - x) ** 6
    return {
        "A": (1 + 8 * x) * (1 - x) ** 8,
        "C": (1 + 2 * x) * (1 - x) ** 2,
        "D": (1 + 4 * (p - 1) * x**2 / (1 + 2 * x) ** 2) * (1 - x) ** 4,
        "U1": u1,
        "U2": u2,
        "W": w,
        "F": f,
        "V1": v1,
        "V2": v2,
        "V3": v3,
        "V4": v4,
    }


@dataclass(frozen=True)
class LocalFactors:
    """Exact local factors at one prime."""

    p: int
    A: Fraction
    C: Fraction
    D: Fraction
    U1: Fraction
    U2: Fraction
    W: Fraction
    F: Fraction
    V1: Fraction
    V2: Fraction
    V3: Fraction
    V4: Fraction

    def satisfies_cd_identity(self) -> bool:
        return self.C**2 * self.D == self.A

    def satisfies_uw_identity(self) -> bool:
        return self.U1 * self.U2 * self.W == self.A


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_sieve(limit: int) -> np.ndarray:
    """All primes <= limit (sieve of Eratosthenes on a boolean array)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for n in range(2, math.isqrt(limit) + 1):
        if sieve[n]:
            sieve[n * n :: n] = False
    primes = np.flatnonzero(sieve).astype(np.int64)
    logger.debug(f"sieve up to {limit}: {len(primes)} primes")
    return primes


def local_factors(p: int) -> LocalFactors:
    """
    Exact local factors at the prime p.

    Raises:
        NotPrime: If p is not prime
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    table = _local_factor_table(Fraction(p))
    return LocalFactors(p=p, **table)


def tail_bound(name: str, cutoff: int) -> float:
    """Bound on |log(product over p > cutoff)|: sum_{p > cutoff} K/p^2 <= K/cutoff."""
    if name not in TAIL_CONSTANTS:
        raise UnknownConstant(f"unknown constant {name!r}; known: {', '.join(CONSTANT_NAMES)}")
    return TAIL_CONSTANTS[name] / cutoff


def euler_product(name: str, cutoff: int = 10**6) -> EulerProductResult:
    """
    Product of the local factors of one constant over primes <= cutoff.

    Args:
        name: One of A, C, D, U1, U2, W
        cutoff: Prime bound, at least 100

    Returns:
        EulerProductResult with the truncated product and its tail bound

    Raises:
        UnknownConstant: If name is not a known constant
    """
    bound = tail_bound(name, max(cutoff, 1))
    if cutoff < MIN_CUTOFF:
        raise ValueError(f"cutoff must be at least {MIN_CUTOFF}, got {cutoff}")
    primes = prime_sieve(cutoff)
    factors = _local_factor_table(primes.astype(float))[name]
    value = math.exp(math.fsum(np.log(factors).tolist()))
    logger.info(f"{name}: product over {len(primes)} primes <= {cutoff} is {value:.12g}")
    return EulerProductResult(
        name=name,
        value=value,
        cutoff=cutoff,
        tail_bound=bound,
        prime_count=int(len(primes)),
    )


def verify_identities(prime_limit: int = 10**4) -> list[IdentityCheck]:
    """Check C_p^2 D_p = A_p and U1_p U2_p W_p = A_p exactly for every prime <= prime_limit."""
    primes = [int(p) for p in prime_sieve(prime_limit)]
    failures: dict[str, Optional[int]] = {identity: None for identity in IDENTITIES}
    for p in primes:
        factors = local_factors(p)
        if failures[IDENTITIES[0]] is None and not factors.satisfies_cd_identity():
            failures[IDENTITIES[0]] = p
        if failures[IDENTITIES[1]] is None and not factors.satisfies_uw_identity():
            failures[IDENTITIES[1]] = p

    checks = []
    for identity in IDENTITIES:
        failure = failures[identity]
        if failure is not None:
            logger.error(f"identity {identity} fails at p={failure}")
        checks.append(
            IdentityCheck(
                identity=identity,
                prime_limit=prime_limit,
                primes_checked=len(primes),
                passed=failure is None,
                first_failure=failure,
            )
        )
    return checks


def constants_report(
    cutoff: int = 10**6,
    prime_limit: int = 10**4,
    names: tuple[str, ...] = CONSTANT_NAMES,
) -> ConstantsReport:
    results = [euler_product(name, cutoff) for name in names]
    identities = verify_identities(prime_limit)
    return ConstantsReport(
        results=results,
        identities=identities,
        all_passed=all(check.passed for check in identities),
    )
