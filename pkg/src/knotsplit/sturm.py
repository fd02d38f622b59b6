"""Real root isolation with Sturm sequences, exact over Q.

Polynomials here are dense coefficient lists (constant term first).
"""
from __future__ import annotations

from fractions import Fraction
import math

from ._backend import Q, kernels


def derivative(p):
    return kernels.trim([i * c for i, c in enumerate(p)][1:])


def squarefree(p):
    """``p / gcd(p, p')``, made monic."""
    p = kernels.trim(list(p))
    if len(p) <= 1:
        return p
    a, b = p, derivative(p)
    while b:
        a, b = b, kernels.divmod_(a, b)[1]
    q, r = kernels.divmod_(p, a)
    assert not r
    lead = q[-1]
    return [c / lead for c in q]


def sturm_sequence(p):
    seq = [list(p), derivative(p)]
    while seq[-1]:
        r = kernels.divmod_(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def count_roots(seq, a, b):
    """Number of distinct roots in ``(a, b]`` (``seq`` from a squarefree polynomial)."""
    return kernels.sign_changes(seq, Q(a)) - kernels.sign_changes(seq, Q(b))


def root_bound(p):
    """Cauchy bound: every real root lies in ``(-B, B)``."""
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Q(0))


def _avoid_root(p, a, b, m):
    """A point of ``(a, b)`` near ``m`` that is not a root of ``p``."""
    k = 3
    while not kernels.horner(p, m):
        m = a + (b - a) * Q(k - 1, 2 * k - 1)
        k += 1
    return m


def isolate_roots(p, lo, hi):
    """Disjoint isolating intervals for the roots of ``p`` in ``(lo, hi)``.

    ``p`` is made squarefree first.  Every returned ``(a, b)`` satisfies
    ``lo <= a < b <= hi``, holds exactly one root in its interior, and its
    endpoints are not roots.  The list is sorted.
    """
    p = squarefree(p)
    if len(p) <= 1:
        return []
    lo, hi = Q(lo), Q(hi)
    seq = sturm_sequence(p)
    if not kernels.horner(p, lo) or not kernels.horner(p, hi):
        raise ValueError("interval endpoints must not be roots")
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = _avoid_root(p, a, b, (a + b) / 2)
        stack.append((a, m))
        stack.append((m, b))
    out.sort()
    return out


def refine(p, interval, width):
    """Shrink an isolating interval of a simple root below ``width`` by bisection.

    Returns ``(m, m)`` if the root is hit exactly.
    """
    a, b = Q(interval[0]), Q(interval[1])
    fa = kernels.horner(p, a)
    if fa == 0 or kernels.horner(p, b) == 0:
        raise ValueError("endpoints must not be roots")
    width = Q(width)
    while b - a > width:
        m = (a + b) / 2
        fm = kernels.horner(p, m)
        if fm == 0:
            return m, m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return a, b


def simplest_between(a, b):
    """The rational of least denominator in the closed interval ``[a, b]``."""
    a, b = Fraction(int(Q(a).numerator), int(Q(a).denominator)), Fraction(int(Q(b).numerator), int(Q(b).denominator))
    if a > b:
        a, b = b, a
    fl = math.floor(a)
    if fl == a:
        return Q(fl)
    if fl + 1 <= b:
        return Q(fl + 1)
    # both in (fl, fl + 1): recurse on reciprocals of the fractional parts
    inner = simplest_between(1 / (b - fl), 1 / (a - fl))
    r = fl + 1 / Fraction(int(inner.numerator), int(inner.denominator))
    return Q(r)
