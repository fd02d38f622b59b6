from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from knotsplit.lambda_ring import ONE, cyclotomic, t
from knotsplit.module import LambdaModule, Submodule
from knotsplit.obstruction import (
    CertificateReport,
    LinearCombination,
    SatelliteKnot,
    Verdict,
    family_independence,
    independence_certificate,
    reduce_to_phi_block,
    rho_of_element,
)
from knotsplit.rho import RhoValue
from knotsplit.seifert import FIGURE8, J, TREFOIL, rho_integral
from strategies import laurent

PHI6, PHI30 = cyclotomic(6), cyclotomic(30)


# -- descriptors ------------------------------------------------------------------------

def test_satellite_descriptor():
    K = SatelliteKnot(30, J)
    assert K.pattern_module == LambdaModule([PHI30**2])
    assert K.pattern_module.full().equals(Submodule(K.pattern_module, [K.axis_class]))
    with pytest.raises(ValueError):
        SatelliteKnot(12, J)


# -- rho of elements -----------------------------------------------------------------------

def test_rho_of_element_examples():
    K = SatelliteKnot(30, J)
    M = K.pattern_module
    assert rho_of_element(K, M.zero()).is_zero()
    assert rho_of_element(K, M.element([PHI30])).exact == rho_integral(J).exact == Fraction(-8, 3)
    Ks = SatelliteKnot(30, "J2")
    assert rho_of_element(Ks, M.element([PHI30])) == RhoValue.symbol("J2")


def test_rho_of_unreduced_element():
    K = SatelliteKnot(30, J)
    with pytest.raises(ValueError, match="element outside reduced case; apply phi-multiplication first"):
        rho_of_element(K, K.axis_class)


@given(laurent())
def test_rho_zero_iff_element_zero(a):
    K = SatelliteKnot(30, "J")
    x = K.pattern_module.element([PHI30 * a])
    assert rho_of_element(K, x).is_zero() == x.is_zero()


# -- phi reduction ----------------------------------------------------------------------------

def test_reduce_examples():
    M = LambdaModule([PHI6**2, PHI6**2])
    x = M.element([PHI6, 0])
    assert reduce_to_phi_block(x) is x
    assert reduce_to_phi_block(M.element([ONE, 0])) == M.element([PHI6, 0])
    assert reduce_to_phi_block(M.element([ONE, PHI6])) == M.element([PHI6, 0])
    with pytest.raises(ValueError):
        reduce_to_phi_block(M.zero())


@given(laurent(), laurent(), laurent())
def test_reduce_property(a, b, c):
    M = LambdaModule([PHI6**2] * 3)
    x = M.element([a, b, c])
    if x.is_zero():
        return
    y = reduce_to_phi_block(x)
    assert not y.is_zero()
    assert y in Submodule(M, [M.element([PHI6 if i == j else 0 for j in range(3)]) for i in range(3)])


# -- certificates -------------------------------------------------------------------------------

def combo(*terms):
    return LinearCombination([(a, SatelliteKnot(k, c)) for a, k, c in terms])


def test_single_knot_obstructed():
    rep = independence_certificate(combo((1, 30, J)))
    assert rep.verdict is Verdict.OBSTRUCTED
    assert rep.witness["rho"] == RhoValue.exact_value(Fraction(-8, 3))
    assert rep.preconditions["K_30(J)"]["arf"] == 0


def test_zero_combination_vanishes():
    assert independence_certificate(combo((0, 30, J), (0, 60, J))).verdict is Verdict.VANISHES
    assert family_independence(LinearCombination([])).verdict is Verdict.VANISHES
    assert family_independence(combo((1, 30, "J1"), (-1, 30, "J1"))).verdict is Verdict.VANISHES


def test_shared_companion_two_blocks():
    rep = independence_certificate(combo((2, 30, "J"), (-1, 60, "J")))
    assert rep.verdict is Verdict.OBSTRUCTED
    coeff = rep.witness["rho"].symbol_map["J"]
    assert 1 <= coeff <= 2
    steps = [s["step"] for s in rep.trace]
    assert "splitting reduction" in steps and "eps-tally" in steps
    split = next(s for s in rep.trace if s["step"] == "splitting reduction")
    assert split["bezout_gcd_is_one"] and all(split["sample_split"].values())


def test_coprimality_error():
    with pytest.raises(ValueError, match="coprimality hypothesis violated"):
        independence_certificate(combo((1, 30, J), (1, 30, "J2")))


def test_ineligible_companions():
    rep = independence_certificate(combo((1, 30, TREFOIL)))  # Arf 1
    assert rep.verdict is Verdict.NOT_APPLICABLE
    rep = independence_certificate(combo((1, 30, FIGURE8)))  # Arf 1 and rho 0
    assert rep.verdict is Verdict.NOT_APPLICABLE


def test_family_examples():
    rep = family_independence(combo((1, 30, "J1"), (1, 30, "J2")))
    assert rep.verdict is Verdict.OBSTRUCTED
    syms = rep.witness["rho"].symbol_map
    assert any(syms.get(n, 0) >= 1 for n in ("J1", "J2"))


def test_obstructed_requires_witness():
    with pytest.raises(ValueError):
        CertificateReport(Verdict.OBSTRUCTED, {"rho": RhoValue.zero()})


companions = st.sampled_from([J, "J1", "J2"])
ks = st.sampled_from([30, 42, 60, 66])


@given(st.lists(st.tuples(st.integers(-3, 3), ks), min_size=1, max_size=4), st.randoms())
def test_verdict_invariant_under_reorder_and_sign(terms, rnd):
    # one companion per k keeps the combination admissible
    comp = {30: J, 42: "J1", 60: "J2", 66: J}
    L = combo(*[(a, k, comp[k]) for a, k in terms])
    v = independence_certificate(L).verdict
    shuffled = list(L.terms)
    rnd.shuffle(shuffled)
    assert independence_certificate(LinearCombination(shuffled)).verdict is v
    assert independence_certificate(LinearCombination([(-a, K) for a, K in L.terms])).verdict is v
    nonzero = any(a for a, _ in L.merged())
    assert v is (Verdict.OBSTRUCTED if nonzero else Verdict.VANISHES)


@given(st.integers(-4, 4).filter(bool), ks, companions)
def test_single_term_always_obstructed(a, k, c):
    rep = independence_certificate(combo((a, k, c)))
    assert rep.verdict is Verdict.OBSTRUCTED
    w = rep.witness["rho"]
    if not w.symbols:
        assert w.lo > 0 or w.hi < 0


def test_report_json():
    data = independence_certificate(combo((1, 30, J))).to_json()
    assert data["verdict"] == "Obstructed"
    assert data["witness"]["rho"]["exact"] == "-8/3"
    assert any("(1)-solvable" in a for a in data["assumptions"])


def test_rho_value_arithmetic():
    a = RhoValue.exact_value(Fraction(1, 3)) + RhoValue.symbol("J1", 2)
    assert (a - a).is_zero()
    assert (3 * RhoValue.symbol("J1")).symbol_map == {"J1": 3}
    assert RhoValue.symbol("J1").certainly_nonzero()
    assert not a.certainly_nonzero()  # numeric part nonzero alongside symbols
    assert RhoValue(Fraction(-1), Fraction(1)).contains_zero()
    assert str(RhoValue.symbol("J2", -1)) == "-1*rho(J2)"
    assert t
