"""Blanchfield linking forms, orthogonal complements and self-annihilating
submodules.

Every form is stored through its Gram matrix ``G[j][k] = Bl(e_j, e_k)`` on
the generators of the ambient module, so that

    Bl(x, y) = sum_{j,k} x_j * G[j][k] * conj(y_k)

is linear in the first argument and conjugate-linear in the second.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .lambda_ring import (
    ONE,
    ZERO,
    LaurentPoly,
    QtModLambda,
    RationalFunction,
    ZERO_COSET,
    cyclotomic,
    euler_phi,
    format_poly,
    monic_normalize,
    normalize_unit,
    parse_poly,
    poly_gcd,
    poly_lcm,
    poly_to_literal,
    t,
)
from .module import (
    DirectSum,
    LambdaModule,
    ModuleElement,
    Submodule,
    kernel_basis,
    smith_normal_form,
)
from .seifert import SeifertMatrix

__all__ = [
    "BlanchfieldForm",
    "OrthogonalReport",
    "LagrangianFamily",
    "diagonal_form",
    "seifert_form",
    "direct_sum_form",
    "pairing",
    "orthogonal_complement",
    "is_self_annihilating",
    "enumerate_self_annihilating",
    "form_from_json",
    "SEIFERT_CONVENTION",
    "balanced_numerator",
]

SEIFERT_CONVENTION = "Bl(x, y) = x^T (1 - t) (tV - V^T)^-1 conj(y), module = Lambda^n / (tV^T - V) Lambda^n"


class BlanchfieldForm:
    """Sesquilinear form on ``ambient`` valued in Q(t)/Lambda."""

    def __init__(self, ambient, gram, variant, metadata=None):
        n = ambient.rank
        if len(gram) != n or any(len(row) != n for row in gram):
            raise ValueError("Gram matrix shape does not match the module")
        self.ambient = ambient
        self.gram = tuple(tuple(row) for row in gram)
        self.variant = variant
        self.metadata = dict(metadata or {})

    def __repr__(self):
        return f"BlanchfieldForm({self.variant}, {self.ambient!r})"

    def pairing(self, x, y):
        if x.module != self.ambient or y.module != self.ambient:
            raise ValueError("elements do not lie in the ambient module of the form")
        acc = ZERO_COSET
        for j, xj in enumerate(x.coords):
            if not xj:
                continue
            row = self.gram[j]
            for k, yk in enumerate(y.coords):
                if yk and row[k]:
                    acc = acc + row[k] * (xj * yk.involution())
        return acc

    def adjoint_row(self, x):
        """The cosets ``Bl(x, e_k)`` for every generator ``e_k``."""
        out = []
        for k in range(self.ambient.rank):
            acc = ZERO_COSET
            for j, xj in enumerate(x.coords):
                if xj and self.gram[j][k]:
                    acc = acc + self.gram[j][k] * xj
            out.append(acc)
        return out

    def is_hermitian(self):
        n = self.ambient.rank
        return all(self.gram[k][j] == self.gram[j][k].involution() for j in range(n) for k in range(j, n))

    def is_nonsingular(self):
        """The adjoint ``x -> Bl(x, -)`` has trivial kernel."""
        return orthogonal_complement(self, self.ambient.full()).is_zero()

    def to_json(self):
        data = {"variant": self.variant, "module": self.ambient.to_json()}
        if self.variant == "diagonal":
            data["diagonal"] = [
                {"d": poly_to_literal(d), "c": poly_to_literal(c)} for d, c in self.metadata["pairs"]
            ]
        if "convention" in self.metadata:
            data["convention"] = self.metadata["convention"]
        return data


def _is_palindromic_up_to_unit(c):
    c = normalize_unit(c)
    return c.involution().shift(c.span) == c


def diagonal_form(pairs, labels=None):
    """Form with ``Bl(e_i, e_i) = c_i / d_i`` on ``+_i Lambda/(d_i)``.

    Each ``c_i`` must be a unit times a palindromic polynomial, coprime to
    ``d_i``.  The form is Hermitian exactly when ``t^deg(d_i) * conj(c_i)``
    equals ``c_i`` modulo ``d_i`` (see :func:`balanced_numerator`).
    """
    ds, cs = [], []
    for d, c in pairs:
        d = parse_poly(d) if not isinstance(d, LaurentPoly) else d
        c = parse_poly(c) if not isinstance(c, LaurentPoly) else c
        if not c:
            raise ValueError("diagonal numerator must be nonzero")
        if not _is_palindromic_up_to_unit(c):
            raise ValueError(f"numerator {format_poly(c)} is not a unit times a palindromic polynomial")
        if poly_gcd(c, d) != ONE:
            raise ValueError("numerator must be coprime to the cyclic factor")
        ds.append(monic_normalize(d))
        cs.append(c)
    M = LambdaModule(ds, labels)
    n = len(ds)
    gram = [[QtModLambda(RationalFunction(cs[i], ds[i])) if i == j else ZERO_COSET for j in range(n)] for i in range(n)]
    return BlanchfieldForm(M, gram, "diagonal", {"pairs": list(zip(ds, cs))})


def balanced_numerator(d, c=ONE):
    """``t^k * c`` with ``c/d`` exactly Hermitian modulo Lambda, or ``None``.

    For ``d`` palindromic of even degree ``2m`` and palindromic ``c`` of
    degree ``2l`` the shift ``k = m - l`` works.
    """
    d = monic_normalize(d)
    c = normalize_unit(c)
    if d.span % 2 or c.span % 2:
        return None
    cand = c.shift((d.span - c.span) // 2)
    val = QtModLambda(RationalFunction(cand, d))
    return cand if val.involution() == val else None


def seifert_form(V):
    """Blanchfield form of the knot with Seifert matrix ``V``.

    The ambient module is the invariant-factor chain of the presentation
    ``tV^T - V``; ``metadata["lift"]`` maps chain generators back to vectors.
    """
    if not isinstance(V, SeifertMatrix):
        V = SeifertMatrix(V)
    n = V.size
    E = V.entries
    A = [[t * E[i][j] - E[j][i] for j in range(n)] for i in range(n)]
    pres = [[A[j][i] for j in range(n)] for i in range(n)]
    snf = smith_normal_form(pres)
    if any(not d for d in snf.diagonal):
        raise ValueError("singular presentation: Alexander polynomial vanishes")
    keep = [i for i, d in enumerate(snf.diagonal) if d.span > 0]
    M = LambdaModule([snf.diagonal[i] for i in keep])
    lifts = [[snf.U_inv[r][i] for r in range(n)] for i in keep]
    Ainv = _inverse(A)
    one_minus_t = LaurentPoly({0: 1, 1: -1})
    k = len(keep)
    gram = []
    for a in range(k):
        row = []
        for b in range(k):
            X, Y = lifts[a], lifts[b]
            Ybar = [y.involution() for y in Y]
            acc = RationalFunction(ZERO)
            for i in range(n):
                if not X[i]:
                    continue
                inner = RationalFunction(ZERO)
                for j in range(n):
                    if Ybar[j] and Ainv[i][j]:
                        inner = inner + Ainv[i][j] * Ybar[j]
                acc = acc + inner * X[i]
            row.append(QtModLambda(acc * one_minus_t))
        gram.append(row)
    meta = {"convention": SEIFERT_CONVENTION, "seifert": V, "lift": lifts, "transform": snf.U, "keep": keep}
    return BlanchfieldForm(M, gram, "seifert", meta)


def _inverse(A):
    """Inverse over Q(t) by Gauss-Jordan elimination."""
    n = len(A)
    M = [[RationalFunction(x) for x in row] + [RationalFunction(ONE if i == j else ZERO) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next(r for r in range(c, n) if M[r][c])
        M[c], M[piv] = M[piv], M[c]
        inv = RationalFunction(ONE) / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def direct_sum_form(B1, B2):
    """Orthogonal sum; the ambient is ``direct_sum(B1.ambient, B2.ambient)``."""
    M = DirectSum([B1.ambient, B2.ambient])
    n1, n2 = B1.ambient.rank, B2.ambient.rank
    gram = [[ZERO_COSET] * (n1 + n2) for _ in range(n1 + n2)]
    for i in range(n1):
        for j in range(n1):
            gram[i][j] = B1.gram[i][j]
    for i in range(n2):
        for j in range(n2):
            gram[n1 + i][n1 + j] = B2.gram[i][j]
    return BlanchfieldForm(M, gram, "direct_sum", {"summands": (B1, B2)})


def pairing(B, x, y):
    return B.pairing(x, y)


def orthogonal_complement(B, P):
    """Generators of ``P^perp = {y : Bl(x, y) = 0 for all x in P}``.

    Conjugating the conditions turns them into Lambda-linear congruences
    ``sum_i y_i n_i = 0 mod D``; their solution set is the projection of the
    kernel of ``[N | diag(D)]``.
    """
    M = B.ambient
    if P.ambient != M:
        raise ValueError("submodule does not lie in the ambient module of the form")
    if P.is_zero():
        return M.full()
    rows, dens = [], []
    for g in P.generators:
        cosets = [c.involution() for c in B.adjoint_row(g)]
        D = ONE
        for c in cosets:
            if c:
                D = poly_lcm(D, c.den)
        if D.span == 0:
            continue
        rows.append([c.num * D.exact_div(c.den) if c else ZERO for c in cosets])
        dens.append(D)
    if not rows:
        return M.full()
    r, m = len(rows), M.rank
    A = [rows[j] + [dens[j] if k == j else ZERO for k in range(r)] for j in range(r)]
    gens = [ModuleElement(M, v[:m]) for v in kernel_basis(A)]
    comp = Submodule(M, gens)
    for g in P.generators:
        for y in comp.generators:
            if B.pairing(g, y):  # pragma: no cover - guards the linear algebra
                raise ArithmeticError("complement generator fails to pair to zero")
    return comp


@dataclass
class OrthogonalReport:
    input: Submodule
    complement: Submodule
    is_self_annihilating: bool
    contained_in_complement: bool
    complement_contained: bool
    certificates: dict = field(default_factory=dict)

    def __bool__(self):
        return self.is_self_annihilating

    def to_json(self):
        return {
            "is_self_annihilating": self.is_self_annihilating,
            "P_subset_Pperp": self.contained_in_complement,
            "Pperp_subset_P": self.complement_contained,
            "P": self.input.to_json(),
            "Pperp": self.complement.to_json(),
            "certificates": {
                k: [c.to_json() if c is not None else None for c in v] for k, v in self.certificates.items()
            },
        }


def is_self_annihilating(B, P):
    """Decide ``P == P^perp`` with membership certificates for both inclusions."""
    comp = orthogonal_complement(B, P)
    into = [comp.membership(g) for g in P.generators]
    back = [P.membership(y) for y in comp.generators]
    a = all(c is not None for c in into)
    b = all(c is not None for c in back)
    return OrthogonalReport(P, comp, a and b, a, b, {"P_in_Pperp": into, "Pperp_in_P": back})


# -- enumeration on a restricted class --------------------------------------

def _cyclotomic_power(d):
    """``(k, e)`` with ``d = Phi_k^e``, or ``None``."""
    d = monic_normalize(d)
    for k in range(1, 2 * d.span * d.span + 3):
        phi = euler_phi(k)
        if phi and d.span % phi == 0:
            e = d.span // phi
            if cyclotomic(k) ** e == d:
                return k, e
    return None


@dataclass
class LagrangianFamily:
    """Self-annihilating submodules of ``+^a Lambda/(p^2)``, ``a >= 2``.

    The family is not listed.  What is recorded is the property used by the
    obstruction argument: every nonzero member contains a nonzero element
    all of whose coordinates lie in ``(p)``; multiplying any element with a
    coordinate outside ``(p)`` by ``p`` produces one.  ``representative`` is
    the member ``pM`` (verified self-annihilating when built).
    """

    prime: LaurentPoly
    positions: tuple
    representative: Submodule
    verified: bool

    def reduced_element(self, x):
        """A nonzero element with all ``positions`` coordinates in ``(p)``."""
        p = self.prime
        if all(p.divides(x.coords[i]) for i in self.positions):
            return x
        return ModuleElement(x.module, [p * c for c in x.coords])

    def is_member(self, B, P):
        return is_self_annihilating(B, P).is_self_annihilating


def enumerate_self_annihilating(B):
    """Self-annihilating submodules of a sum of cyclotomic blocks ``Phi_k^e``, ``e <= 2``.

    Returns a list whose entries are explicit :class:`Submodule` objects, or
    (when some prime occurs in two or more square blocks) a single tuple of
    per-prime answers mixing submodules and :class:`LagrangianFamily`.
    """
    M = B.ambient
    groups = {}
    for i, d in enumerate(M.factors):
        ke = _cyclotomic_power(d)
        if ke is None or ke[1] > 2:
            raise ValueError("enumeration unsupported; use is_self_annihilating on candidate")
        groups.setdefault(ke[0], []).append((i, ke[1]))
    per_prime = []
    has_family = False
    for k, blocks in sorted(groups.items()):
        p = cyclotomic(k)
        exps = [e for _, e in blocks]
        if sum(e * p.span for e in exps) % 2 or (sum(exps) % 2):
            return []
        if all(e == 2 for e in exps):
            gens = [ModuleElement(M, [p if j == i else ZERO for j in range(M.rank)]) for i, _ in blocks]
            if len(blocks) == 1:
                per_prime.append([gens])
            else:
                has_family = True
                rep = Submodule(M, gens)
                per_prime.append([LagrangianFamily(p, tuple(i for i, _ in blocks), rep, False)])
            continue
        raise ValueError("enumeration unsupported; use is_self_annihilating on candidate")
    results = []
    for choice in product(*per_prime):
        if has_family:
            families = []
            gens = []
            for c in choice:
                if isinstance(c, LagrangianFamily):
                    families.append(c)
                    gens.extend(c.representative.generators)
                else:
                    gens.extend(c)
            rep = Submodule(M, gens)
            ok = is_self_annihilating(B, rep).is_self_annihilating
            for f in families:
                f.verified = ok
            results.append(tuple(families))
            continue
        gens = [g for c in choice for g in c]
        P = Submodule(M, gens)
        if not is_self_annihilating(B, P).is_self_annihilating:
            raise ValueError("form is not of the supported nonsingular diagonal shape")
        results.append(P)
    return results


def form_from_json(data):
    if "diagonal" in data:
        return diagonal_form([(parse_poly(e["d"]), parse_poly(e.get("c", [[0, "1"]]))) for e in data["diagonal"]])
    if "seifert" in data:
        return seifert_form(SeifertMatrix(data["seifert"]))
    raise ValueError("form literal needs 'diagonal' or 'seifert'")
