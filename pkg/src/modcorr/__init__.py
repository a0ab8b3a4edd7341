"""Exact modular polynomials for genus-zero X_0(M), class numbers, and
intersection numbers of modular correspondences."""

from .intersect import (
    HalfIntT,
    eisenstein_C,
    intersection_eisenstein,
    intersection_gamma0,
    intersection_gamma0_Ap,
    intersection_hurwitz,
    is_proper,
)
from .modpoly import ModPoly, index_gamma0, modular_polynomial, phi_polynomial, psi_polynomial
from .oracle import BiPoly, bipoly_gcd, groebner, multiplicity_off_axes, oracle_intersection, quotient_dim
from .qseries import Series, hauptmodul_series, j_series
from .quadforms import HM, Ap, HM_orbit, HM_prime, QForm, chi, hurwitz_H, primitive_h

__version__ = "0.1.0"

__all__ = [
    "Ap", "BiPoly", "HM", "HM_orbit", "HM_prime", "HalfIntT", "ModPoly", "QForm", "Series",
    "bipoly_gcd", "chi", "eisenstein_C", "groebner", "hauptmodul_series", "hurwitz_H",
    "index_gamma0", "intersection_eisenstein", "intersection_gamma0", "intersection_gamma0_Ap",
    "intersection_hurwitz", "is_proper", "j_series", "modular_polynomial", "multiplicity_off_axes",
    "oracle_intersection", "phi_polynomial", "primitive_h", "psi_polynomial", "quotient_dim",
]
