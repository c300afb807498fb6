"""Exact integer and rational algebra: sparse matrices, polynomials,
polynomial determinants and power-quotient certificates."""

from .linalg import (
    NoSolution,
    PowerQuotient,
    bareiss_det,
    det_one_minus_uM,
    det_poly_matrix,
    evaluation_points,
    extract_power_quotient,
    interpolate,
)
from .poly import (
    IntPolynomial,
    RationalFunction,
    divmod_rational,
    log_derivative,
    poly_gcd,
    series_inverse,
    series_exp,
    series_inverse_rational,
    series_log,
    series_mul,
)
from .sparse import SparseIntMatrix

gcd = poly_gcd

__all__ = [
    "IntPolynomial",
    "NoSolution",
    "PowerQuotient",
    "RationalFunction",
    "SparseIntMatrix",
    "bareiss_det",
    "det_one_minus_uM",
    "det_poly_matrix",
    "divmod_rational",
    "evaluation_points",
    "extract_power_quotient",
    "gcd",
    "interpolate",
    "log_derivative",
    "poly_gcd",
    "series_inverse",
    "series_exp",
    "series_inverse_rational",
    "series_log",
    "series_mul",
]
