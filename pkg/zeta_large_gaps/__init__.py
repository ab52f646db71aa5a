"""
Zeta Large Gaps - exact-arithmetic toolkit for large gaps between zeta zeros.

This package evaluates the mollified shifted-moment ratio h(c) for admissible
mollifier polynomials, optimizes the polynomial to certify lower bounds
lambda > c/pi on normalized gaps (conditional on RH), verifies the Euler
product constants behind the leading-order moments, and computes empirical
gap statistics from tables of zero ordinates.

Certificates are re-verified through exact rational arithmetic; floating
point enters only at the final scalar of each computation.
"""

__version__ = "0.1.0"

from .config import Settings, get_settings
from .core import (
    MollifierSpec,
    ThetaParam,
    certify_lambda,
    euler_product,
    h_ratio,
    load_zeros,
    max_gap_report,
    max_lambda,
)

__all__ = [
    "MollifierSpec",
    "Settings",
    "ThetaParam",
    "__version__",
    "certify_lambda",
    "euler_product",
    "get_settings",
    "h_ratio",
    "load_zeros",
    "max_gap_report",
    "max_lambda",
]
