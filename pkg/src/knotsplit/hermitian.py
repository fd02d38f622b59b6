"""Exact inertia of Hermitian matrices with entries in Q(i)."""
from __future__ import annotations

from ._backend import Q


class GaussQ:
    """Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Q(re)
        self.im = Q(im)

    def __add__(self, o):
        return GaussQ(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return GaussQ(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        if not isinstance(o, GaussQ):
            o = GaussQ(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self):
        return GaussQ(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __truediv__(self, o):
        if not isinstance(o, GaussQ):
            o = GaussQ(o)
        n = o.norm()
        c = self * o.conj()
        return GaussQ(c.re / n, c.im / n)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        if not isinstance(o, GaussQ):
            o = GaussQ(o)
        return self.re == o.re and self.im == o.im

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"


def inertia(H):
    """``(positive, negative, zero)`` counts of a Hermitian matrix over Q(i).

    Symmetric elimination by congruence: pivot on a nonzero diagonal entry;
    when the remaining diagonal vanishes but some ``h_ij`` does not, replace
    row/column ``i`` by adding ``h_ij`` times row/column ``j``; the new
    diagonal entry is ``2|h_ij|^2 > 0``.
    """
    M = [[x if isinstance(x, GaussQ) else GaussQ(x) for x in row] for row in H]
    n = len(M)
    for i in range(n):
        for j in range(i, n):
            if M[i][j] != M[j][i].conj():
                raise ValueError("matrix is not Hermitian")
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if M[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and M[i][j]), None)
            if pair is None:
                break
            i, j = pair
            c = M[i][j]
            # row_i += c * row_j, then col_i += conj(c) * col_j
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
            cc = c.conj()
            for row in M:
                row[i] = row[i] + row[j] * cc
            piv = i
        p = M[piv][piv]
        d = p.re
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for r in active:
            if not M[r][piv]:
                continue
            f = M[r][piv] / p
            fc = f.conj()
            M[r] = [a - f * b for a, b in zip(M[r], M[piv])]
            for row in M:
                row[r] = row[r] - row[piv] * fc
    return pos, neg, n - pos - neg


def signature(H):
    pos, neg, _ = inertia(H)
    return pos - neg
