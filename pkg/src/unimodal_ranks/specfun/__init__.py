"""Exact special values, the exact constant ring, and Bessel kernels."""

from .bessel import DEFAULT_PREC, bessel_I_scaled, bessel_profile
from .exact import Rat, bernoulli_number, bernoulli_poly, euler_number, euler_poly
from .pipoly import PiPoly, QuadNumber, pi_poly_eval

__all__ = [
    "DEFAULT_PREC",
    "PiPoly",
    "QuadNumber",
    "Rat",
    "bernoulli_number",
    "bernoulli_poly",
    "bessel_I_scaled",
    "bessel_profile",
    "euler_number",
    "euler_poly",
    "pi_poly_eval",
]
