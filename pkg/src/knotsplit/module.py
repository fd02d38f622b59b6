"""Finitely presented torsion modules over the Laurent ring.

A module is written as a direct sum of cyclic pieces ``Lambda/(d_i)``; an
element is the tuple of its coordinates, each reduced modulo its ``d_i``.
Presentations follow the column convention: the module presented by an
``m x n`` matrix ``A`` is ``Lambda^m / (column space of A)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import math

from .lambda_ring import (
    ONE,
    ZERO,
    LaurentPoly,
    format_poly,
    gcd_bezout,
    monic_normalize,
    parse_poly,
    poly_gcd,
    poly_lcm,
    reduce_mod,
)
from .lambda_ring import Q, poly_to_literal

__all__ = [
    "SmithForm",
    "smith_normal_form",
    "mat_mul",
    "identity",
    "determinant",
    "kernel_basis",
    "solve",
    "LambdaModule",
    "DirectSum",
    "ModuleElement",
    "Submodule",
    "module_from_presentation",
    "direct_sum",
    "annihilator",
    "element_annihilator",
    "scalar_action",
    "submodule_membership",
    "primary_component",
]


# -- matrices over the Laurent ring ----------------------------------------

def _lp(x):
    return x if isinstance(x, LaurentPoly) else LaurentPoly(x)


def as_matrix(rows):
    return [[_lp(x) for x in row] for row in rows]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = []
        for j in range(cols):
            acc = ZERO
            for k in range(inner):
                if row[k] and B[k][j]:
                    acc = acc + row[k] * B[k][j]
            new.append(acc)
        out.append(new)
    return out


def determinant(A):
    """Fraction-free (Bareiss) determinant over the Laurent ring."""
    n = len(A)
    if n == 0:
        return ONE
    M = [list(map(_lp, row)) for row in A]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return ZERO
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_div(prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return -d if sign < 0 else d


@dataclass(frozen=True)
class SmithForm:
    """``U * A * W == D`` with ``U``, ``W`` invertible; inverses included."""

    U: list
    D: list
    W: list
    U_inv: list
    W_inv: list

    @property
    def diagonal(self):
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)


def _content(polys):
    """Positive rational ``c`` with ``polys / c`` integral and primitive, or None."""
    num = den = None
    for p in polys:
        for c in p.coeffs:
            if c:
                n, d = abs(int(c.numerator)), int(c.denominator)
                num = n if num is None else math.gcd(num, n)
                den = d if den is None else math.lcm(den, d)
    if num is None:
        return None
    return Q(num, den)


def _pick_pivot(M, t, rows, cols):
    best = None
    for i in rows:
        for j in cols:
            e = M[i][j]
            if e and (best is None or e.span < best[0]):
                best = (e.span, i, j)
                if e.span == 0:
                    return best
    return best


def smith_normal_form(A):
    """Smith normal form over the Laurent ring.

    The pivot is the nonzero entry of least span (ties broken row-major);
    nonzero diagonal entries are returned monic with nonzero constant term
    and form a divisibility chain.
    """
    M = as_matrix(A)
    m = len(M)
    n = len(M[0]) if m else 0
    U, Ui = identity(m), identity(m)
    W, Wi = identity(n), identity(n)

    def swap_rows(i, j):
        if i != j:
            M[i], M[j] = M[j], M[i]
            U[i], U[j] = U[j], U[i]
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in M:
                row[i], row[j] = row[j], row[i]
            for row in W:
                row[i], row[j] = row[j], row[i]
            Wi[i], Wi[j] = Wi[j], Wi[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        M[dst] = [a + q * b if b else a for a, b in zip(M[dst], M[src])]
        U[dst] = [a + q * b if b else a for a, b in zip(U[dst], U[src])]
        for row in Ui:
            if row[dst]:
                row[src] = row[src] - row[dst] * q

    def add_col(dst, src, q):
        # col_dst += q * col_src
        for row in M:
            if row[src]:
                row[dst] = row[dst] + row[src] * q
        for row in W:
            if row[src]:
                row[dst] = row[dst] + row[src] * q
        Wi[src] = [a - q * b if b else a for a, b in zip(Wi[src], Wi[dst])]

    # rescaling by rational units keeps Euclidean remainders from swelling
    def tidy_row(i):
        c = _content(M[i])
        if c is not None and c != 1:
            M[i] = [x * (1 / c) for x in M[i]]
            U[i] = [x * (1 / c) for x in U[i]]
            for row in Ui:
                row[i] = row[i] * c

    def tidy_col(j):
        c = _content(row[j] for row in M)
        if c is not None and c != 1:
            for row in M:
                row[j] = row[j] * (1 / c)
            for row in W:
                row[j] = row[j] * (1 / c)
            Wi[j] = [x * c for x in Wi[j]]

    for k in range(min(m, n)):
        piv = _pick_pivot(M, k, range(k, m), range(k, n))
        if piv is None:
            break
        swap_rows(k, piv[1])
        swap_cols(k, piv[2])
        while True:
            dirty = False
            for i in range(k + 1, m):
                if M[i][k]:
                    q, r = M[i][k].divmod(M[k][k])
                    add_row(i, k, -q)
                    tidy_row(i)
                    dirty = dirty or bool(r)
            for j in range(k + 1, n):
                if M[k][j]:
                    q, r = M[k][j].divmod(M[k][k])
                    add_col(j, k, -q)
                    tidy_col(j)
                    dirty = dirty or bool(r)
            if dirty:
                cand = [(M[i][k].span, i, k) for i in range(k + 1, m) if M[i][k]]
                cand += [(M[k][j].span, k, j) for j in range(k + 1, n) if M[k][j]]
                _, i, j = min(cand)
                swap_rows(k, i)
                swap_cols(k, j)
                continue
            bad = next(
                (i for i in range(k + 1, m) for j in range(k + 1, n) if M[i][j] and not M[k][k].divides(M[i][j])),
                None,
            )
            if bad is None:
                break
            add_row(k, bad, ONE)
        p = M[k][k]
        target = monic_normalize(p)
        if target != p:
            u = target.exact_div(p)
            uinv = p.exact_div(target)
            M[k] = [x * u for x in M[k]]
            U[k] = [x * u for x in U[k]]
            for row in Ui:
                row[k] = row[k] * uinv
    return SmithForm(U, M, W, Ui, Wi)


def kernel_basis(A, ncols=None):
    """Column vectors spanning the right kernel of ``A`` over the Laurent ring."""
    if not A:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    snf = smith_normal_form(A)
    n = len(A[0])
    r = snf.rank
    return [[snf.W[i][j] for i in range(n)] for j in range(r, n)]


def solve(A, b, snf=None):
    """A solution ``c`` of ``A c = b`` over the Laurent ring, or ``None``."""
    m = len(A)
    n = len(A[0]) if m else 0
    if snf is None:
        snf = smith_normal_form(A)
    ub = [sum((snf.U[i][k] * b[k] for k in range(m) if b[k] and snf.U[i][k]), ZERO) for i in range(m)]
    y = []
    for i in range(n):
        d = snf.D[i][i] if i < m else ZERO
        if d:
            q, r = ub[i].divmod(d)
            if r:
                return None
            y.append(q)
        else:
            if i < m and ub[i]:
                return None
            y.append(ZERO)
    if any(ub[i] for i in range(n, m)):
        return None
    return [sum((snf.W[i][j] * y[j] for j in range(n) if y[j] and snf.W[i][j]), ZERO) for i in range(n)]


# -- modules ----------------------------------------------------------------

class LambdaModule:
    """Direct sum of cyclic modules ``Lambda/(d_1) + ... + Lambda/(d_k)``.

    Each ``d_i`` is stored monic with nonzero constant term and is not a
    unit.  The factors need not form a divisibility chain; the chain view
    comes from :meth:`canonical`.
    """

    def __init__(self, factors, labels=None):
        fs = []
        for d in factors:
            d = parse_poly(d) if not isinstance(d, LaurentPoly) else d
            if not d:
                raise ValueError("module not torsion")
            d = monic_normalize(d)
            if d.span == 0:
                raise ValueError("cyclic factors must be nonunits")
            fs.append(d)
        self.factors = tuple(fs)
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(len(fs)))
        if len(self.labels) != len(self.factors):
            raise ValueError("one label per cyclic factor required")

    cyclic_factors = property(lambda self: self.factors)

    @property
    def rank(self):
        return len(self.factors)

    def __len__(self):
        return len(self.factors)

    def __eq__(self, other):
        return isinstance(other, LambdaModule) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        inner = " + ".join(f"L/({format_poly(d)})" for d in self.factors) or "0"
        return f"LambdaModule({inner})"

    def is_chain(self):
        return all(a.divides(b) for a, b in zip(self.factors, self.factors[1:]))

    def element(self, coords):
        return ModuleElement(self, coords)

    def zero(self):
        return ModuleElement(self, [ZERO] * self.rank)

    def gen(self, i):
        return ModuleElement(self, [ONE if j == i else ZERO for j in range(self.rank)])

    def gens(self):
        return [self.gen(i) for i in range(self.rank)]

    def full(self):
        return Submodule(self, self.gens())

    def zero_submodule(self):
        return Submodule(self, [])

    def order(self):
        """Product of the cyclic factors (the order ideal generator)."""
        p = ONE
        for d in self.factors:
            p = p * d
        return p

    def dimension(self):
        """Dimension over Q."""
        return sum(d.span for d in self.factors)

    def canonical(self):
        """Divisibility-chain form with the transporting isomorphism."""
        return ChainIsomorphism(self)

    def to_json(self):
        return {"cyclic_factors": [poly_to_literal(d) for d in self.factors]}

    @classmethod
    def from_json(cls, data):
        factors = [parse_poly(p) for p in data["cyclic_factors"]]
        return cls(factors, data.get("labels"))


class DirectSum(LambdaModule):
    """A direct sum that remembers its summands and block offsets."""

    def __init__(self, summands):
        self.summands = tuple(summands)
        factors, labels, offsets = [], [], []
        for i, M in enumerate(self.summands):
            offsets.append(len(factors))
            factors.extend(M.factors)
            labels.extend(f"{i}:{lab}" for lab in M.labels)
        super().__init__(factors, labels)
        self.offsets = tuple(offsets)

    def block_range(self, i):
        start = self.offsets[i]
        return range(start, start + self.summands[i].rank)

    def inject(self, i, x):
        """Embedding of the i-th summand, e.g. x -> (x, 0)."""
        if x.module != self.summands[i]:
            raise ValueError("element does not belong to that summand")
        coords = [ZERO] * self.rank
        for k, c in zip(self.block_range(i), x.coords):
            coords[k] = c
        return ModuleElement(self, coords)

    def project(self, i, z):
        if z.module != self:
            raise ValueError("element does not belong to this direct sum")
        return ModuleElement(self.summands[i], [z.coords[k] for k in self.block_range(i)])


class ChainIsomorphism:
    """Isomorphism between a block module and its invariant-factor chain."""

    def __init__(self, source):
        self.source = source
        n = source.rank
        diag = [[source.factors[i] if i == j else ZERO for j in range(n)] for i in range(n)]
        snf = smith_normal_form(diag)
        keep = [i for i, d in enumerate(snf.diagonal) if d.span > 0]
        self._snf = snf
        self._keep = keep
        self.target = LambdaModule([snf.diagonal[i] for i in keep])

    def forward(self, x):
        U = self._snf.U
        coords = [
            sum((U[i][k] * x.coords[k] for k in range(self.source.rank) if x.coords[k]), ZERO)
            for i in self._keep
        ]
        return ModuleElement(self.target, coords)

    def backward(self, y):
        Ui = self._snf.U_inv
        full = [ZERO] * self.source.rank
        for c, i in zip(y.coords, self._keep):
            full[i] = c
        coords = [
            sum((Ui[k][i] * full[i] for i in range(self.source.rank) if full[i]), ZERO)
            for k in range(self.source.rank)
        ]
        return ModuleElement(self.source, coords)


class ModuleElement:
    """Element of a :class:`LambdaModule` with canonically reduced coordinates."""

    __slots__ = ("module", "coords")

    def __init__(self, module, coords):
        coords = [parse_poly(c) if not isinstance(c, LaurentPoly) else c for c in coords]
        if len(coords) != module.rank:
            raise ValueError(f"expected {module.rank} coordinates, got {len(coords)}")
        self.module = module
        self.coords = tuple(reduce_mod(c, d) for c, d in zip(coords, module.factors))

    def _check(self, other):
        if not isinstance(other, ModuleElement) or other.module != self.module:
            raise ValueError("elements belong to different modules")

    def __add__(self, other):
        self._check(other)
        return ModuleElement(self.module, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return ModuleElement(self.module, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return ModuleElement(self.module, [-a for a in self.coords])

    def __rmul__(self, p):
        return scalar_action(p, self)

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return isinstance(other, ModuleElement) and self.module == other.module and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + ", ".join(format_poly(c) for c in self.coords) + ")"

    def to_json(self):
        return [poly_to_literal(c) for c in self.coords]


@dataclass(frozen=True)
class Membership:
    """Certificate ``x = sum coefficients[j] * generators[j]``."""

    coefficients: tuple

    def to_json(self):
        return [poly_to_literal(c) for c in self.coefficients]


class Submodule:
    """Submodule of ``ambient`` spanned by finitely many elements."""

    def __init__(self, ambient, generators):
        gens = []
        for g in generators:
            if not isinstance(g, ModuleElement):
                g = ModuleElement(ambient, g)
            if g.module != ambient:
                raise ValueError("generator lies outside the ambient module")
            if g and g not in gens:
                gens.append(g)
        self.ambient = ambient
        self.generators = tuple(gens)
        self._snf: Optional[SmithForm] = None

    def __repr__(self):
        return f"Submodule<{len(self.generators)} gens: {list(self.generators)}>"

    def is_zero(self):
        return not self.generators

    def relation_matrix(self):
        """Columns: generators, then the defining relations ``d_i e_i``."""
        M = self.ambient
        m = M.rank
        cols = [list(g.coords) for g in self.generators]
        cols += [[M.factors[i] if k == i else ZERO for k in range(m)] for i in range(m)]
        return [[cols[j][i] for j in range(len(cols))] for i in range(m)]

    def membership(self, x):
        """Coefficient certificate when ``x`` lies in this submodule, else ``None``."""
        if x.module != self.ambient:
            raise ValueError("ambient mismatch")
        if x.is_zero():
            return Membership(tuple(ZERO for _ in self.generators))
        if not self.generators:
            return None
        A = self.relation_matrix()
        if self._snf is None:
            self._snf = smith_normal_form(A)
        c = solve(A, list(x.coords), self._snf)
        if c is None:
            return None
        coeffs = tuple(c[: len(self.generators)])
        check = self.ambient.zero()
        for a, g in zip(coeffs, self.generators):
            check = check + scalar_action(a, g)
        if check != x:  # pragma: no cover - guards the linear algebra
            raise ArithmeticError("membership certificate failed verification")
        return Membership(coeffs)

    def __contains__(self, x):
        return self.membership(x) is not None

    def issubset(self, other):
        return all(g in other for g in self.generators)

    def equals(self, other):
        return self.issubset(other) and other.issubset(self)

    def dimension(self):
        """Dimension over Q, from the Smith form of the relation matrix."""
        m = self.ambient.rank
        if not self.generators:
            return 0
        sub = smith_normal_form(self.relation_matrix())
        quotient = sum(d.span for d in sub.diagonal[:m])
        return self.ambient.dimension() - quotient

    def to_json(self):
        return [g.to_json() for g in self.generators]


# -- operations -------------------------------------------------------------

def module_from_presentation(A):
    """Cokernel of ``A`` as a chain of cyclic factors (unit factors dropped)."""
    A = as_matrix(A)
    m = len(A)
    if m == 0:
        return LambdaModule([])
    snf = smith_normal_form(A)
    diag = snf.diagonal
    if len(diag) < m or any(not d for d in diag):
        raise ValueError("module not torsion")
    return LambdaModule([d for d in diag if d.span > 0])


def direct_sum(*modules):
    if len(modules) == 1 and isinstance(modules[0], (list, tuple)):
        modules = tuple(modules[0])
    return DirectSum(modules)


def annihilator(M):
    """Monic generator of the annihilator ideal (the lcm of the factors)."""
    a = ONE
    for d in M.factors:
        a = poly_lcm(a, d)
    return a


def element_annihilator(x):
    a = ONE
    for c, d in zip(x.coords, x.module.factors):
        a = poly_lcm(a, d.exact_div(poly_gcd(c, d)) if c else ONE)
    return a


def scalar_action(p, x):
    p = _lp(p)
    return ModuleElement(x.module, [p * c for c in x.coords])


def submodule_membership(x, S):
    """Membership certificate of ``x`` in ``S`` (``None`` when not a member)."""
    if x.module != S.ambient:
        raise ValueError("ambient mismatch")
    return S.membership(x)


def primary_part(a, p):
    """Largest divisor of ``a`` supported on the prime factors of ``p``."""
    a1 = ONE
    rest = a
    while True:
        g = poly_gcd(rest, p)
        if g.span <= 0:
            return monic_normalize(a1), rest
        a1 = a1 * g
        rest = rest.exact_div(g)


def primary_component(x, p):
    """Project ``x`` onto the part of its module where ``p`` is nilpotent."""
    p = _lp(p)
    if not p:
        raise ValueError("primary component of the zero polynomial is undefined")
    ann = annihilator(x.module)
    a1, a2 = primary_part(ann, p)
    g, f, h = gcd_bezout(a1, a2)
    if g != ONE:
        raise ValueError("annihilator does not split into coprime parts")
    return scalar_action(h * a2, x)
