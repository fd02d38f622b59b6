"""Acceptance gate. Each test is one criterion; ``conftest`` prints a
PASS/FAIL line per criterion after the run."""
import json
import time
from fractions import Fraction

from helpers import intersection_with_block, random_cyclotomic_product, random_poly, random_seifert, \
    random_split_instance, seeded

from knotsplit.blanchfield import diagonal_form, is_self_annihilating
from knotsplit.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from knotsplit.gamma import IDENTITY, GammaElement, commutator, gamma_inverse
from knotsplit.lambda_ring import (
    ONE,
    ZERO_COSET,
    QtModLambda,
    RationalFunction,
    cyclotomic,
    gcd_bezout,
    monic_normalize,
    t,
)
from knotsplit.module import Submodule, determinant, mat_mul, smith_normal_form
from knotsplit import sturm
from knotsplit.seifert import (
    MINUS_ONE,
    TREFOIL,
    UnitCirclePoint,
    alexander_polynomial,
    arf_invariant,
    connected_sum,
    levine_tristram_at,
    rho_integral,
    signature_function,
    symmetric_reduction,
    tangent_polynomial,
)
from knotsplit.splitting import split_submodule


def test_criterion_1_bezout_suite():
    rng = seeded(1001)
    pairs = []
    for _ in range(200):
        p, used = random_cyclotomic_product(rng)
        q, _ = random_cyclotomic_product(rng, pool=set(range(1, 61)) - set(used))
        pairs.append((p, q))
    start = time.perf_counter()
    for p, q in pairs:
        g, f, h = gcd_bezout(p, q)
        assert g == ONE
        assert f * p + h * q == ONE
    assert time.perf_counter() - start < 5


def test_criterion_2_trefoil_golden_values():
    assert alexander_polynomial(TREFOIL) == t * t - t + 1
    assert levine_tristram_at(TREFOIL, MINUS_ONE) == -2
    sf = signature_function(TREFOIL)
    assert [j.turn for j in sf.jumps] == [Fraction(1, 6), Fraction(5, 6)]
    r = rho_integral(TREFOIL)
    assert r.exact == Fraction(-4, 3)
    assert arf_invariant(TREFOIL) == 1
    JJ = connected_sum(TREFOIL, TREFOIL)
    assert rho_integral(JJ).exact == Fraction(-8, 3)
    assert arf_invariant(JJ) == 0


def test_criterion_3_rho_additivity():
    rng = seeded(1003)
    bound = Fraction(1, 2**40)
    for _ in range(50):
        V1, V2 = random_seifert(rng, rng.randint(1, 3)), random_seifert(rng, rng.randint(1, 3))
        r1, r2 = rho_integral(V1, 40), rho_integral(V2, 40)
        r = rho_integral(connected_sum(V1, V2), 40)
        for x in (r1, r2, r):
            assert x.width <= bound
        if r1.exact is not None and r2.exact is not None:
            assert r.exact == r1.exact + r2.exact
        else:
            assert r.exact is None
            lo, hi = r1.enclosure[0] + r2.enclosure[0], r1.enclosure[1] + r2.enclosure[1]
            assert r.enclosure[0] <= hi and lo <= r.enclosure[1]


def test_criterion_4_self_annihilation():
    for k in (6, 10, 12, 30):
        start = time.perf_counter()
        phi = cyclotomic(k)
        B = diagonal_form([(phi * phi, ONE)])
        M = B.ambient
        assert is_self_annihilating(B, Submodule(M, [M.element([phi])])).is_self_annihilating
        assert not is_self_annihilating(B, Submodule(M, [])).is_self_annihilating
        assert not is_self_annihilating(B, M.full()).is_self_annihilating
        assert time.perf_counter() - start < 1


def test_criterion_5_splitting_oracle():
    rng = seeded(1005)
    for _ in range(100):
        B1, B2, P = random_split_instance(rng)
        res = split_submodule(B1, B2, P)
        assert res.P1.equals(intersection_with_block(P, 0))
        assert res.P2.equals(intersection_with_block(P, 1))
        assert res.ok
        if res.checks["P self-annihilating"]:
            assert is_self_annihilating(B1, res.P1).is_self_annihilating
            assert is_self_annihilating(B2, res.P2).is_self_annihilating


def test_criterion_6_snf_suite():
    rng = seeded(1006)
    for _ in range(100):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = [[random_poly(rng, 4) for _ in range(n)] for _ in range(m)]
        snf = smith_normal_form(A)
        assert mat_mul(mat_mul(snf.U, A), snf.W) == snf.D
        assert all(not snf.D[i][j] for i in range(m) for j in range(n) if i != j)
        diag = snf.diagonal
        nz = [d for d in diag if d]
        assert diag[: len(nz)] == nz
        assert all(a.divides(b) for a, b in zip(nz, nz[1:]))
        if m == n:
            det = determinant(A)
            if det:
                prod = ONE
                for d in diag:
                    prod = prod * d
                assert monic_normalize(prod) == monic_normalize(det)


def _random_gamma(rng):
    num = random_poly(rng, 3)
    den = random_poly(rng, 3) or ONE
    return GammaElement(QtModLambda(RationalFunction(num, den)), rng.randint(-3, 3))


def test_criterion_7_gamma_group_law():
    rng = seeded(1007)
    s, s_inv = GammaElement(ZERO_COSET, 1), GammaElement(ZERO_COSET, -1)
    for _ in range(1000):
        a, b, c = (_random_gamma(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * IDENTITY == a == IDENTITY * a
        assert a * gamma_inverse(a) == IDENTITY == gamma_inverse(a) * a
        fiber = GammaElement(a.coset, 0)
        assert s * fiber * s_inv == GammaElement(a.coset * t, 0)
        x, y = commutator(a, b), commutator(b, c)
        assert commutator(x, y) == IDENTITY


def _certify(capsys, scenario, *flags):
    code = main(["--json", "certify", json.dumps(scenario), *flags])
    return code, json.loads(capsys.readouterr().out)


def test_criterion_8_certificate_end_to_end(capsys):
    companion = {"seifert": connected_sum(TREFOIL, TREFOIL).entries, "name": "trefoil#trefoil"}
    code, out = _certify(capsys, {"terms": [{"a": 1, "k": 30, "companion": companion}]}, "--expect", "obstructed")
    assert code == EXIT_OK
    assert out["verdict"] == "Obstructed" and out["witness"]["rho"]["exact"] == "-8/3"
    code, _ = _certify(capsys, {"terms": [{"a": 1, "k": 30, "companion": companion}]}, "--expect", "vanishes")
    assert code == EXIT_FAIL
    zero = {"terms": [{"a": 0, "k": 30, "companion": companion}, {"a": 0, "k": 42, "companion": "J"}]}
    code, out = _certify(capsys, zero, "--expect", "vanishes")
    assert code == EXIT_OK and out["verdict"] == "Vanishes"
    shared = {"terms": [{"a": 1, "k": 30, "companion": companion}, {"a": 1, "k": 30, "companion": "trefoil"}]}
    code, out = _certify(capsys, shared)
    assert code == EXIT_INPUT and "coprimality hypothesis violated" in out["error"]


def test_criterion_9_near_one_vanishing():
    rng = seeded(1009)
    for _ in range(50):
        V = random_seifert(rng, rng.randint(1, 3))
        upper, _ = signature_function(V).upper
        s = upper[0].s_lo / 2 if upper else Fraction(1)
        q = sturm.squarefree(tangent_polynomial(symmetric_reduction(alexander_polynomial(V))))
        if len(q) > 1:
            # no tangent root, hence no jump, in (0, s]
            assert sturm.count_roots(sturm.sturm_sequence(q), 0, s) == 0
        assert s > 0
        assert levine_tristram_at(V, UnitCirclePoint.from_tangent(s)) == 0

