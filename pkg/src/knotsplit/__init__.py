"""Exact Blanchfield-form and rho-invariant computations for knot concordance.

Arithmetic kernels come from a compiled extension when it is built and fall
back to pure Python otherwise; ``BACKEND`` names the one in use.
"""
from ._backend import BACKEND
from .lambda_ring import LaurentPoly, QtModLambda, RationalFunction, cyclotomic, gcd_bezout, parse_poly, t
from .module import LambdaModule, ModuleElement, Submodule, direct_sum, smith_normal_form
from .gamma import GammaElement
from .seifert import SeifertMatrix, alexander_polynomial, arf_invariant, rho_integral, signature_function
from .blanchfield import BlanchfieldForm, diagonal_form, is_self_annihilating, seifert_form
from .splitting import split_submodule, verify_splitting_theorem
from .rho import RhoValue
from .obstruction import LinearCombination, SatelliteKnot, family_independence, independence_certificate

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "LaurentPoly",
    "QtModLambda",
    "RationalFunction",
    "cyclotomic",
    "gcd_bezout",
    "parse_poly",
    "t",
    "LambdaModule",
    "ModuleElement",
    "Submodule",
    "direct_sum",
    "smith_normal_form",
    "GammaElement",
    "SeifertMatrix",
    "alexander_polynomial",
    "arf_invariant",
    "rho_integral",
    "signature_function",
    "BlanchfieldForm",
    "diagonal_form",
    "is_self_annihilating",
    "seifert_form",
    "split_submodule",
    "verify_splitting_theorem",
    "RhoValue",
    "LinearCombination",
    "SatelliteKnot",
    "family_independence",
    "independence_certificate",
]
