import pytest

from helpers import hermitian_diagonal, intersection_with_block, random_split_instance, seeded
from knotsplit.lambda_ring import ONE, cyclotomic
from knotsplit.module import DirectSum, Submodule
from knotsplit.rho import RhoValue
from knotsplit.seifert import J, rho_integral
from knotsplit.splitting import SplittingError, rho_additivity, split_submodule, verify_splitting_theorem

PHI6, PHI10 = cyclotomic(6), cyclotomic(10)


def golden_setup():
    B1, B2 = hermitian_diagonal([PHI6**2]), hermitian_diagonal([PHI10**2])
    M = DirectSum([B1.ambient, B2.ambient])
    return B1, B2, M


def test_split_golden():
    B1, B2, M = golden_setup()
    P = Submodule(M, [M.element([PHI6, PHI10])])
    res = split_submodule(B1, B2, P)
    assert res.ok and all(res.checks.values())
    assert res.P1.equals(Submodule(B1.ambient, [B1.ambient.element([PHI6])]))
    assert res.P2.equals(Submodule(B2.ambient, [B2.ambient.element([PHI10])]))
    f, g = res.bezout
    assert f * PHI6**2 + g * PHI10**2 == ONE
    # brute force: (Phi6, 0) = g*D2 * (Phi6, Phi10) lies in P
    assert M.element([PHI6, 0]) in P
    assert (g * PHI10**2) * M.element([PHI6, PHI10]) == M.element([PHI6, 0])


def test_split_zero():
    B1, B2, M = golden_setup()
    res = split_submodule(B1, B2, M.zero_submodule())
    assert res.P1.is_zero() and res.P2.is_zero()


def test_split_full_module():
    B1, B2, M = golden_setup()
    res = split_submodule(B1, B2, M.full())
    assert res.P1.equals(B1.ambient.full()) and res.P2.equals(B2.ambient.full())
    assert res.checks["P self-annihilating"] is False
    assert res.checks["P1 self-annihilating"] is None and res.ok


def test_non_coprime_rejected():
    B = hermitian_diagonal([PHI6**2])
    M = DirectSum([B.ambient, B.ambient])
    with pytest.raises(SplittingError, match="coprimality hypothesis violated"):
        split_submodule(B, B, M.zero_submodule())


def test_foreign_submodule_rejected():
    B1, B2, _ = golden_setup()
    with pytest.raises(SplittingError):
        split_submodule(B1, B2, B1.ambient.full())


@pytest.mark.parametrize("seed", range(30))
def test_split_matches_intersection_oracle(seed):
    B1, B2, P = random_split_instance(seeded(seed))
    res = split_submodule(B1, B2, P)
    assert res.checks["bezout_identity"]
    assert res.checks["P1+P2 in P"] and res.checks["P in P1+P2"]
    assert res.P1.equals(intersection_with_block(P, 0))
    assert res.P2.equals(intersection_with_block(P, 1))
    M = P.ambient
    for z in P.generators:
        assert M.inject(0, M.project(0, z)) in P
        assert M.inject(1, M.project(1, z)) in P
    if res.checks["P self-annihilating"]:
        assert res.checks["P1 self-annihilating"] and res.checks["P2 self-annihilating"]


@pytest.mark.parametrize("seed", range(10))
def test_split_idempotent(seed):
    B1, B2, P = random_split_instance(seeded(100 + seed))
    res = split_submodule(B1, B2, P)
    M = P.ambient
    Q = Submodule(M, [M.inject(0, x) for x in res.P1.generators] + [M.inject(1, y) for y in res.P2.generators])
    again = split_submodule(B1, B2, Q)
    assert again.P1.equals(res.P1) and again.P2.equals(res.P2)


def test_rho_additivity_examples():
    r = RhoValue.from_integral(rho_integral(J))
    assert rho_additivity(r, RhoValue.zero(), "first") == RhoValue.exact_value("-8/3")
    assert rho_additivity(RhoValue.zero(), RhoValue.zero(), "second").is_zero()
    assert rho_additivity(RhoValue.zero(), RhoValue.symbol("J1"), "second") == RhoValue.symbol("J1")


def test_theorem_instance_verified():
    B1, B2, M = golden_setup()
    P = Submodule(M, [M.element([PHI6, 0]), M.element([0, PHI10])])
    rep = verify_splitting_theorem(B1, B2, P, [RhoValue.zero(), RhoValue.zero()])
    assert rep.verified and rep.failed_hypothesis is None
    assert rep.conclusion["P1 self-annihilating"] and rep.conclusion["P2 self-annihilating"]
    assert rep.assumptions


def test_theorem_hypothesis_failures():
    B = hermitian_diagonal([PHI6**2])
    M = DirectSum([B.ambient, B.ambient])
    rep = verify_splitting_theorem(B, B, Submodule(M, [M.element([PHI6, PHI6])]), [RhoValue.zero()])
    assert not rep.verified and rep.failed_hypothesis == "coprime annihilators"
    B1, B2, M = golden_setup()
    rep = verify_splitting_theorem(B1, B2, M.full(), [RhoValue.zero()] * 2)
    assert rep.failed_hypothesis == "P self-annihilating"
    P = Submodule(M, [M.element([PHI6, PHI10])])
    rep = verify_splitting_theorem(B1, B2, P, [RhoValue.exact_value(1)])
    assert rep.failed_hypothesis == "rho vanishes on P"


def test_splitting_json():
    B1, B2, M = golden_setup()
    data = split_submodule(B1, B2, Submodule(M, [M.element([PHI6, PHI10])])).to_json()
    assert data["ok"] and data["checks"]["bezout_identity"]
