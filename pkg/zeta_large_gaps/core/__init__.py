"""Core module initialization."""

from .constants import constants_report, euler_product, local_factors, verify_identities
from .errors import LargeGapsError
from .functional import MollifierSpec, QuadForms, ThetaParam, h_ratio, quad_forms
from .optimizer import MollifierOptimizer, certify_lambda, max_lambda, min_rayleigh
from .ratpoly import RatPoly
from .zerostats import ZeroTable, load_zeros, max_gap_report

__all__ = [
    "LargeGapsError",
    "MollifierOptimizer",
    "MollifierSpec",
    "QuadForms",
    "RatPoly",
    "ThetaParam",
    "ZeroTable",
    "certify_lambda",
    "constants_report",
    "euler_product",
    "h_ratio",
    "load_zeros",
    "local_factors",
    "max_gap_report",
    "max_lambda",
    "min_rayleigh",
    "quad_forms",
    "verify_identities",
]
