"""
Mollifier optimization and certification of lambda > c/pi.

h(c) is a generalized Rayleigh quotient in the coefficients of P, so its
minimum over polynomials of degree at most M is the smallest eigenvalue of
the pencil (N(c), D). The eigenvector is rationalized and re-checked through
the exact h(c) pipeline before anything is certified, and the largest
certified c is found by bisection.
"""

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ..config import Settings, get_settings
from ..models import LambdaCertificate, SweepEntry, SweepReport
from .errors import BracketFailure, CertificationFailure, LargeGapsError
from .functional import MollifierSpec, QuadForms, ThetaParam, h_ratio, quad_forms
from .linalg import congruence, jacobi_eigh, ldl_decompose, unit_lower_inverse

logger = logging.getLogger(__name__)

DISPLAY_LEAD = 1000
PROBE_SLACK = 1e-9
EIGEN_RESIDUAL_LIMIT = 1e-8


@dataclass(frozen=True, eq=False)
class EigenResult:
    """Smallest generalized eigenpair of (N, D)."""

    mu: float
    a: np.ndarray
    residual: float


def min_rayleigh(forms: QuadForms, tol: float = 1e-12, max_sweeps: int = 100) -> EigenResult:
    """
    Minimize a^T N a / a^T D a.

    D = L diag(d) L^T is factored exactly and S = d^-1/2 L^-1 N L^-T d^-1/2 is
    formed exactly before rounding, then diagonalized by Jacobi. The
    eigenvector is mapped back with a = L^-T d^-1/2 z and scaled so that its
    largest-magnitude entry is +1.

    Raises:
        NotPositiveDefinite: If D is not positive definite
        ConvergenceFailure: If Jacobi does not converge
    """
    lower, diag = forms.D_factor
    if not diag:
        lower, diag = ldl_decompose(forms.D_exact)
    inverse = unit_lower_inverse(lower)
    transformed = congruence(inverse, forms.N_exact)
    n = forms.size

    s = np.empty((n, n), dtype=float)
    for k in range(n):
        for l in range(n):
            s[k, l] = float(transformed[k][l] / diag[k]) * math.sqrt(float(diag[k] / diag[l]))
    s = 0.5 * (s + s.T) * forms.numerator_scale

    eigenvalues, vectors = jacobi_eigh(s, tol=tol, max_sweeps=max_sweeps)
    mu = float(eigenvalues[0])
    z = vectors[:, 0]

    # d^-1/2 z up to the common factor sqrt(d_0)
    y = [Fraction(float(z[k]) * math.sqrt(float(diag[0] / diag[k]))) for k in range(n)]
    a_exact = [sum((inverse[i][k] * y[i] for i in range(k, n)), Fraction(0)) for k in range(n)]
    pivot = max(a_exact, key=abs)
    a = np.array([float(x / pivot) for x in a_exact], dtype=float)

    r = forms.N @ a - mu * (forms.D @ a)
    residual = float(np.max(np.abs(r)) / np.max(np.abs(a)))
    logger.debug(f"min_rayleigh(M={forms.M}): mu={mu:.15g} residual={residual:.3e}")
    return EigenResult(mu=mu, a=a, residual=residual)


def rayleigh_probe_check(
    forms: QuadForms, mu: float, count: int = 32, seed: int = 20240229
) -> bool:
    """mu <= a^T N a / a^T D a for ``count`` random vectors (exact quotients)."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        probe = rng.standard_normal(forms.size)
        quotient = forms.ratio(probe)
        if mu > quotient + PROBE_SLACK * max(1.0, abs(quotient)):
            logger.warning(f"probe quotient {quotient:.15g} is below mu={mu:.15g}")
            return False
    return True


def rationalize(a: Sequence[float], max_denominator: int = 10**6) -> MollifierSpec:
    """Continued-fraction rounding of each coefficient at denominator <= max_denominator."""
    return MollifierSpec.from_sequence(
        Fraction(float(x)).limit_denominator(max_denominator) for x in a
    )


def display_coefficients(spec: MollifierSpec, lead: int = DISPLAY_LEAD) -> list[float]:
    """Rescale so that a_2 = lead (or the first nonzero coefficient when a_2 = 0)."""
    pivot = next(a for a in spec.coefficients if a != 0)
    factor = Fraction(lead) / pivot
    return [float(factor * a) for a in spec.coefficients]


@dataclass(frozen=True)
class Attempt:
    """Outcome of trying to certify one (M, c) cell."""

    c: float
    certified: bool
    mu: float
    witness: Optional[MollifierSpec] = None
    h: Optional[float] = None


class MollifierOptimizer:
    """
    Certifies lower bounds lambda > c/pi with mollifiers of bounded degree.

    Tolerances, the rationalization denominator and the bracket limit come
    from Settings.
    """

    def __init__(
        self,
        settings: Optional[Settings] = None,
        theta: Optional[ThetaParam] = None,
        generalized_theta: bool = False,
    ):
        """
        Initialize the optimizer.

        Args:
            settings: Run settings (defaults to the global settings)
            theta: Length exponent (default 1/2)
            generalized_theta: Allow theta != 1/2
        """
        self.settings = settings or get_settings()
        self.theta = theta or ThetaParam()
        self.generalized_theta = generalized_theta

    def forms(self, M: int, c: float) -> QuadForms:
        return quad_forms(
            M,
            c,
            self.theta,
            self.settings.tol_series,
            generalized_theta=self.generalized_theta,
            series_cap=self.settings.series_cap,
        )

    def min_rayleigh(self, forms: QuadForms) -> EigenResult:
        return min_rayleigh(
            forms, tol=self.settings.jacobi_tol, max_sweeps=self.settings.jacobi_max_sweeps
        )

    def h(self, spec: MollifierSpec, c: float) -> float:
        return h_ratio(
            spec,
            c,
            self.theta,
            self.settings.tol_series,
            generalized_theta=self.generalized_theta,
            series_cap=self.settings.series_cap,
        ).h

    def eigen_is_trustworthy(self, forms: QuadForms, eigen: EigenResult) -> bool:
        """Residual below EIGEN_RESIDUAL_LIMIT and mu below every random probe quotient."""
        if not eigen.residual <= EIGEN_RESIDUAL_LIMIT:
            logger.warning(
                f"M={forms.M}: eigen residual {eigen.residual:.3e} exceeds {EIGEN_RESIDUAL_LIMIT:g}"
            )
            return False
        return rayleigh_probe_check(
            forms, eigen.mu, count=self.settings.probe_count, seed=self.settings.probe_seed
        )

    def attempt(self, M: int, c: float) -> Attempt:
        """Minimize at (M, c) and re-verify the rationalized minimizer exactly."""
        forms = self.forms(M, c)
        eigen = self.min_rayleigh(forms)
        if not eigen.mu < 1:
            logger.debug(f"c={c:.12g}: mu={eigen.mu:.15g} >= 1")
            return Attempt(c=c, certified=False, mu=eigen.mu)
        if not self.eigen_is_trustworthy(forms, eigen):
            logger.warning(f"c={c:.12g}: eigenpair failed its checks, not certifying")
            return Attempt(c=c, certified=False, mu=eigen.mu)

        witness = rationalize(eigen.a, self.settings.max_denominator)
        h = self.h(witness, c)
        if not h < 1:
            logger.warning(
                f"c={c:.12g}: mu={eigen.mu:.15g} < 1 but the rationalized witness "
                f"gives h={h:.15g}"
            )
            return Attempt(c=c, certified=False, mu=eigen.mu, h=h)
        logger.debug(f"c={c:.12g}: certified with mu={eigen.mu:.15g}, h={h:.15g}")
        return Attempt(c=c, certified=True, mu=eigen.mu, witness=witness, h=h)

    def certify_lambda(self, M: int, c: float) -> tuple[bool, Optional[MollifierSpec]]:
        """True with a witness iff h(c) < 1 is certified for some P of degree <= M."""
        result = self.attempt(M, c)
        return result.certified, result.witness

    def _bracket(self, M: int) -> tuple[Attempt, float]:
        """A certified attempt and a failing c above it."""
        limit = self.settings.bracket_limit
        start = min(math.pi, limit)
        first = self.attempt(M, start)
        if first.certified:
            best = first
            probes = [k * math.pi for k in (2, 4, 8) if start < k * math.pi < limit]
            if limit > start:
                probes.append(limit)
            for c in probes:
                result = self.attempt(M, c)
                if not result.certified:
                    return best, c
                best = result
            raise BracketFailure(f"h(c) < 1 was certified up to c={limit:.6g} at M={M}")

        hi = start
        c = start
        for _ in range(60):
            c /= 2
            result = self.attempt(M, c)
            if result.certified:
                return result, hi
            hi = c
        raise BracketFailure(f"no certified gap parameter above c={c:.3e} at M={M}")

    def verify_margin(self, witness: MollifierSpec, c: float) -> float:
        """
        h(c) of the witness, required to be below 1.

        Raises:
            CertificationFailure: If h(c) >= 1
        """
        h = self.h(witness, c)
        if not h < 1:
            logger.error(f"witness gives h={h:.15g} at c={c:.12g}")
            raise CertificationFailure(f"witness gives h={h:.15g} >= 1 at c={c:.12g}")
        return h

    def max_lambda(self, M: int, tol_c: Optional[float] = None) -> LambdaCertificate:
        """
        Largest certified c (within tol_c) for mollifiers of degree <= M.

        Raises:
            BracketFailure: If no failing c is found below the bracket limit
            CertificationFailure: If the witness fails at c_star - tol_c
        """
        if M < 2:
            raise ValueError(f"degree bound M must be at least 2, got {M}")
        tol_c = tol_c if tol_c is not None else self.settings.tol_c
        if not tol_c > 0:
            raise ValueError(f"tol_c must be positive, got {tol_c}")

        best, hi = self._bracket(M)
        lo = best.c
        logger.info(f"M={M}: bracket [{lo:.12g}, {hi:.12g}]")
        while hi - lo > tol_c:
            mid = 0.5 * (lo + hi)
            result = self.attempt(M, mid)
            if result.certified:
                best, lo = result, mid
            else:
                hi = mid
            logger.debug(f"M={M}: bracket [{lo:.12g}, {hi:.12g}]")

        witness = best.witness
        if witness is None:
            raise LargeGapsError("bisection ended without a witness")
        below = lo - tol_c if lo > tol_c else 0.5 * lo
        h_below = self.verify_margin(witness, below)

        logger.info(f"M={M}: lambda > {lo / math.pi:.9f} (c*={lo:.12g})")
        return LambdaCertificate(
            M=M,
            theta=self.theta.theta,
            c_star=lo,
            lambda_value=lo / math.pi,
            witness=list(witness.coefficients),
            witness_display=display_coefficients(witness),
            h_at_witness=best.h,
            h_below_tolerance=h_below,
            mu=best.mu,
            tolerance_c=tol_c,
        )

    def degree_sweep(self, degrees: Iterable[int], tol_c: Optional[float] = None) -> SweepReport:
        """
        max_lambda for each degree, with the nesting check
        lambda(M') >= lambda(M) - 2 tol_c for consecutive degrees M < M'.
        """
        tol_c = tol_c if tol_c is not None else self.settings.tol_c
        entries: list[SweepEntry] = []
        for M in sorted(set(degrees)):
            certificate = self.max_lambda(M, tol_c)
            entries.append(
                SweepEntry(
                    M=M,
                    c_star=certificate.c_star,
                    lambda_value=certificate.lambda_value,
                    h_at_witness=certificate.h_at_witness,
                )
            )

        monotone = all(
            later.lambda_value >= earlier.lambda_value - 2 * tol_c
            for earlier, later in zip(entries, entries[1:])
        )
        if not monotone:
            logger.warning("certified lambda decreased with the degree beyond tolerance")
        above_three = [entry.M for entry in entries if entry.lambda_value > 3]
        return SweepReport(
            entries=entries,
            tolerance_c=tol_c,
            monotone=monotone,
            degrees_above_three=above_three,
        )


def certify_lambda(
    M: int,
    c: float,
    theta: Optional[ThetaParam] = None,
    settings: Optional[Settings] = None,
) -> tuple[bool, Optional[MollifierSpec]]:
    return MollifierOptimizer(settings, theta).certify_lambda(M, c)


def max_lambda(
    M: int,
    theta: Optional[ThetaParam] = None,
    tol_c: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> LambdaCertificate:
    return MollifierOptimizer(settings, theta).max_lambda(M, tol_c)


def degree_sweep(
    degrees: Iterable[int],
    theta: Optional[ThetaParam] = None,
    tol_c: Optional[float] = None,
    settings: Optional[Settings] = None,
) -> SweepReport:
    return MollifierOptimizer(settings, theta).degree_sweep(degrees, tol_c)
