import pytest
from hypothesis import given, strategies as st

from knotsplit.blanchfield import balanced_numerator, diagonal_form
from knotsplit.gamma import (
    IDENTITY,
    GammaElement,
    MetabelianRepDescriptor,
    commutator,
    gamma_inverse,
    gamma_multiply,
    phi_image_on_homology,
)
from knotsplit.lambda_ring import ZERO_COSET, QtModLambda, RationalFunction, cyclotomic, t
from knotsplit.module import Submodule
from strategies import laurent, nonzero_laurent

cosets = st.builds(lambda a, d: QtModLambda(RationalFunction(a, d)), laurent(), nonzero_laurent)
elements = st.builds(GammaElement, cosets, st.integers(-4, 4))

PHI6 = cyclotomic(6)
C = QtModLambda(RationalFunction(t + 2, PHI6))
D = QtModLambda(RationalFunction(1, t - 3))


def test_conjugation_by_generator_is_multiplication_by_t():
    g = GammaElement(ZERO_COSET, 1)
    assert g * GammaElement(C, 0) * GammaElement(ZERO_COSET, -1) == GammaElement(C * t, 0)


def test_fiber_is_abelian():
    assert GammaElement(C, 0) * GammaElement(D, 0) == GammaElement(C + D, 0)


@pytest.mark.parametrize("a, b", [(GammaElement(ZERO_COSET, 5), GammaElement(ZERO_COSET, -5)),
                                  (GammaElement(C, 0), GammaElement(-C, 0))])
def test_inverse_examples(a, b):
    assert gamma_inverse(a) == b


@given(elements)
def test_identity_and_inverse(a):
    assert a * IDENTITY == a and IDENTITY * a == a
    assert a * gamma_inverse(a) == IDENTITY
    assert gamma_inverse(a) * a == IDENTITY


@given(elements, elements, elements)
def test_associativity(a, b, c):
    assert gamma_multiply(gamma_multiply(a, b), c) == gamma_multiply(a, gamma_multiply(b, c))


@given(elements, elements, elements, elements)
def test_metabelian(a, b, c, d):
    x, y = commutator(a, b), commutator(c, d)
    assert x.exponent == 0 and y.exponent == 0
    assert commutator(x, y) == IDENTITY


def _descriptor(x_coord, c=None):
    d = PHI6 * PHI6
    B = diagonal_form([(d, c or balanced_numerator(d))])
    return B, MetabelianRepDescriptor(B.ambient.element([x_coord]), B)


def test_phi_of_zero_element():
    B, desc = _descriptor(0)
    for y in (B.ambient.gen(0), B.ambient.element([t - 5])):
        assert phi_image_on_homology(desc, y, 3) == GammaElement(ZERO_COSET, 3)


def test_phi_on_reduced_elements_vanishes():
    B, desc = _descriptor(PHI6)
    y = B.ambient.element([PHI6])
    assert phi_image_on_homology(desc, y, -2) == GammaElement(ZERO_COSET, -2)


def test_phi_on_generator_is_nonzero():
    d = PHI6 * PHI6
    B = diagonal_form([(d, 1)])
    desc = MetabelianRepDescriptor(B.ambient.gen(0), B)
    img = phi_image_on_homology(desc, B.ambient.gen(0), 1)
    assert img.coset == QtModLambda(RationalFunction(1, d))
    assert not img.coset.is_zero()


@given(laurent(), laurent())
def test_phi_additive_in_y(a, b):
    B, desc = _descriptor(t + 1)
    M = B.ambient
    y1, y2 = M.element([a]), M.element([b])
    s = phi_image_on_homology(desc, y1, 0) * phi_image_on_homology(desc, y2, 0)
    assert s == phi_image_on_homology(desc, y1 + y2, 0)


def test_extension_flag():
    B, desc = _descriptor(PHI6)
    P = Submodule(B.ambient, [B.ambient.element([PHI6])])
    assert desc.extends_over_solution(P)
    _, desc2 = _descriptor(1)
    assert not desc2.extends_over_solution(P)


def test_descriptor_rejects_foreign_element():
    B, _ = _descriptor(1)
    other = diagonal_form([(cyclotomic(10) ** 2, 1)])
    with pytest.raises(ValueError):
        MetabelianRepDescriptor(other.ambient.gen(0), B)
    _, desc = _descriptor(1)
    with pytest.raises(ValueError):
        phi_image_on_homology(desc, other.ambient.gen(0), 0)


def test_json_shape():
    data = GammaElement(C, 2).to_json()
    assert data["exponent"] == 2 and set(data["coset"]) == {"num", "den"}
