"""The metabelian group Q(t)/Lambda x| Z and the homology-level data of the
representations it receives.

The generator ``t`` of ``Z`` acts on the fiber ``Q(t)/Lambda`` by
multiplication, so ``(a, m) * (b, n) = (a + t^m b, m + n)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .lambda_ring import QtModLambda, ZERO_COSET, LaurentPoly, format_poly

__all__ = [
    "GammaElement",
    "IDENTITY",
    "gamma_multiply",
    "gamma_inverse",
    "commutator",
    "MetabelianRepDescriptor",
    "phi_image_on_homology",
]


@dataclass(frozen=True)
class GammaElement:
    coset: QtModLambda
    exponent: int = 0

    def __post_init__(self):
        if not isinstance(self.coset, QtModLambda):
            object.__setattr__(self, "coset", QtModLambda(self.coset))
        object.__setattr__(self, "exponent", int(self.exponent))

    def __mul__(self, other):
        return gamma_multiply(self, other)

    def inverse(self):
        return gamma_inverse(self)

    def to_json(self):
        c = self.coset
        return {
            "coset": {"num": format_poly(c.num), "den": format_poly(c.den)},
            "exponent": self.exponent,
        }


IDENTITY = GammaElement(ZERO_COSET, 0)


def gamma_multiply(a, b):
    return GammaElement(a.coset + b.coset * LaurentPoly.monomial(a.exponent), a.exponent + b.exponent)


def gamma_inverse(a):
    return GammaElement(-(a.coset * LaurentPoly.monomial(-a.exponent)), -a.exponent)


def commutator(a, b):
    return a * b * gamma_inverse(a) * gamma_inverse(b)


@dataclass(frozen=True)
class MetabelianRepDescriptor:
    """The data ``(x, Bl)`` determining the representation attached to ``x``.

    Whether the representation extends over a (1)-solution is recorded,
    not computed: it does exactly when ``x`` lies in the kernel submodule.
    """

    base_element: object
    form: object

    def __post_init__(self):
        if self.base_element.module != self.form.ambient:
            raise ValueError("base element does not lie in the module of the form")

    @property
    def module(self):
        return self.form.ambient

    def extends_over_solution(self, P):
        """Flag for reports: ``x in P`` for the given kernel submodule ``P``."""
        return self.base_element in P


def phi_image_on_homology(desc, y, eps_y):
    """``(Bl(x, y), eps_y)`` where ``y`` is already the class of ``y mu^-eps(y)``."""
    if y.module != desc.module:
        raise ValueError("element is not in the module of the descriptor")
    return GammaElement(desc.form.pairing(desc.base_element, y), eps_y)
