"""Shared random generators and independent oracles for the test suite."""
import random
from fractions import Fraction

import sympy

from knotsplit.lambda_ring import LaurentPoly, cyclotomic
from knotsplit.seifert import SeifertMatrix

X = sympy.Symbol("t")


def to_sympy(p):
    """Ordinary sympy polynomial ``t^-low * p`` (shifts out negative powers)."""
    return sympy.Poly(sum(sympy.Rational(int(c.numerator), int(c.denominator)) * X ** (e - p.low)
                          for e, c in p.terms.items()) or 0, X, domain="QQ")


def from_sympy(poly, shift=0):
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    return LaurentPoly.from_coeffs(coeffs, shift)


def random_seifert(rng, genus):
    """``S + W`` with ``S`` symmetric and ``W - W^T`` the standard symplectic form,
    conjugated by a random unimodular matrix."""
    n = 2 * genus
    V = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            V[i][j] = V[j][i] = rng.randint(-2, 2)
    for i in range(0, n, 2):
        V[i][i + 1] += 1
    for _ in range(rng.randint(0, 3)):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        c = rng.choice([-1, 1])
        for row in V:  # column op
            row[i] += c * row[j]
        for k in range(n):  # matching row op keeps P^T V P
            V[i][k] += c * V[j][k]
    return SeifertMatrix(V)


def random_cyclotomic_product(rng, kmax=60, max_degree=16, pool=None):
    ks = [k for k in range(1, kmax + 1) if pool is None or k in pool]
    rng.shuffle(ks)
    out, deg, used = LaurentPoly.from_coeffs([1]), 0, []
    for k in ks:
        p = cyclotomic(k)
        if deg + p.span <= max_degree and rng.random() < 0.5:
            out, deg = out * p, deg + p.span
            used.append(k)
    if not used:
        out, used = cyclotomic(ks[0]) if cyclotomic(ks[0]).span <= max_degree else cyclotomic(1), [ks[0]]
    return out, used


def random_poly(rng, max_span=4, bound=3, low_range=(-2, 2)):
    span = rng.randint(0, max_span)
    coeffs = [Fraction(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(span + 1)]
    return LaurentPoly.from_coeffs(coeffs, rng.randint(*low_range))


def seeded(seed):
    return random.Random(seed)


SMALL_K = [1, 2, 3, 4, 5, 6, 8, 10, 12]


def hermitian_diagonal(factors):
    """Diagonal form with exactly Hermitian entries ``t^m / d`` (``d`` of degree ``2m``)
    or ``1/d`` when ``d`` has odd degree is impossible; callers pass even-degree
    palindromic factors or the squares ``(t - 1)^2``, ``(t + 1)^2``."""
    from knotsplit.blanchfield import balanced_numerator, diagonal_form

    return diagonal_form([(d, balanced_numerator(d)) for d in factors])


def random_split_instance(rng, lagrangian=None):
    """Two diagonal forms with coprime cyclotomic annihilators and a submodule ``P``.

    With ``lagrangian`` true (default: coin flip) every block is ``Phi_k^2`` and
    ``P`` is generated by ``Phi_k`` times coprime multipliers, plus a random
    combination, so it is frequently self-annihilating.
    """
    from knotsplit.module import DirectSum, Submodule

    if lagrangian is None:
        lagrangian = rng.random() < 0.5
    ks = rng.sample(SMALL_K, rng.randint(2, 4))
    cut = rng.randint(1, len(ks) - 1)
    sides = ks[:cut], ks[cut:]
    forms = []
    for side in sides:
        factors = []
        for k in side:
            p = cyclotomic(k)
            e = 2 if lagrangian or p.span % 2 or rng.random() < 0.5 else 1
            factors.append(p**e)
        forms.append(hermitian_diagonal(factors))
    B1, B2 = forms
    M = DirectSum([B1.ambient, B2.ambient])
    primes = [cyclotomic(k) for k in sides[0] + sides[1]]
    gens = []
    if lagrangian:
        basis = []
        for i, p in enumerate(primes):
            coords = [LaurentPoly() for _ in primes]
            coords[i] = p * random_poly(rng, 2, low_range=(0, 0))
            basis.append(M.element(coords))
        mix = M.zero()
        for b in basis:
            mix = mix + random_poly(rng, 1, low_range=(0, 0)) * b
        gens = basis + [mix]
    else:
        for _ in range(rng.randint(1, 3)):
            gens.append(M.element([random_poly(rng, 3) for _ in primes]))
    return B1, B2, Submodule(M, gens)


def intersection_with_block(P, side):
    """Oracle for ``{x : x placed in block `side` lies in P}`` via a kernel computation.

    Solves ``sum c_i z_i`` having zero coordinates outside the block: the
    coefficient vectors form the kernel of ``[Y | diag(d)]`` where ``Y`` holds the
    other block's coordinates of the generators.
    """
    from knotsplit.module import Submodule, kernel_basis

    M = P.ambient
    other = M.block_range(1 - side)
    mine = M.block_range(side)
    gens = P.generators
    if not gens:
        return Submodule(M.summands[side], [])
    rows = []
    for r, idx in enumerate(other):
        row = [g.coords[idx] for g in gens]
        row += [M.factors[idx] if j == r else LaurentPoly() for j in range(len(other))]
        rows.append(row)
    n = len(gens)
    if rows:
        vecs = [v[:n] for v in kernel_basis(rows)]
    else:
        vecs = [[LaurentPoly(1) if i == j else LaurentPoly() for i in range(n)] for j in range(n)]
    out = []
    for c in vecs:
        coords = []
        for idx in mine:
            acc = LaurentPoly()
            for ci, g in zip(c, gens):
                acc = acc + ci * g.coords[idx]
            coords.append(acc)
        out.append(M.summands[side].element(coords))
    return Submodule(M.summands[side], out)
