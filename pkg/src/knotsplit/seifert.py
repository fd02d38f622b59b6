"""Knot invariants computed from a Seifert matrix.

The Alexander polynomial uses the convention ``det(tV - V^T)``.  The
Levine-Tristram signature at a unit complex number ``w`` is the signature of
``(1 - w)V + (1 - conj(w))V^T``.  Points of the circle are parametrized by
``s = tan(theta/2)``::

    w(s) = ((1 - s^2) + 2 s i) / (1 + s^2)

so every rational ``s`` gives an exact point, and ``s in (0, inf)`` sweeps the
upper half circle.  The signature integral is taken against the normalized
measure of total mass one.
"""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from mpmath import iv, libmp

from ._backend import Q, kernels, to_fraction
from .hermitian import GaussQ, signature
from .lambda_ring import ONE, LaurentPoly, cyclotomic, euler_phi, normalize_unit, t
from .module import determinant
from . import sturm

__all__ = [
    "SeifertMatrix",
    "UnitCirclePoint",
    "Jump",
    "SignatureFunction",
    "RhoIntegral",
    "alexander_polynomial",
    "connected_sum",
    "arf_invariant",
    "levine_tristram_at",
    "signature_function",
    "rho_integral",
    "cyclotomic_factors",
    "PRESETS",
    "preset",
    "load_knot",
]


class SeifertMatrix:
    """Integer Seifert matrix ``V`` of even size with ``det(V - V^T) = 1``."""

    __slots__ = ("entries", "name")

    def __init__(self, entries, name=None, validate=True):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("Seifert matrix must be square")
        self.entries = rows
        self.name = name
        if validate:
            if n % 2:
                raise ValueError("Seifert matrix must have even size")
            d = _int_det([[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)])
            if abs(d) != 1:
                raise ValueError(f"V - V^T is not unimodular (det = {d})")

    @property
    def size(self):
        return len(self.entries)

    def transpose(self):
        n = self.size
        return [[self.entries[j][i] for j in range(n)] for i in range(n)]

    def __eq__(self, other):
        return isinstance(other, SeifertMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"SeifertMatrix({label}{[list(r) for r in self.entries]})"

    def to_json(self):
        return {"name": self.name, "seifert": [list(r) for r in self.entries]}


def _int_det(M):
    n = len(M)
    if n == 0:
        return 1
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return int(det)


@dataclass(frozen=True)
class UnitCirclePoint:
    """Exact point ``re + im*i`` of the unit circle with rational coordinates."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))
        if self.re * self.re + self.im * self.im != 1:
            raise ValueError("point is not on the unit circle")

    @classmethod
    def from_tangent(cls, s):
        """The point with ``tan(theta/2) = s``."""
        s = Fraction(s)
        d = 1 + s * s
        return cls((1 - s * s) / d, 2 * s / d)

    def conjugate(self):
        return UnitCirclePoint(self.re, -self.im)


MINUS_ONE = UnitCirclePoint(-1, 0)


def alexander_polynomial(V):
    """``det(tV - V^T)``, normalized up to ``+-t^k``; the unknot gives 1."""
    n = V.size
    if n == 0:
        return ONE
    E = V.entries
    A = [[t * E[i][j] - E[j][i] for j in range(n)] for i in range(n)]
    return normalize_unit(determinant(A))


def connected_sum(V1, V2):
    n1, n2 = V1.size, V2.size
    rows = [list(r) + [0] * n2 for r in V1.entries]
    rows += [[0] * n1 + list(r) for r in V2.entries]
    name = f"{V1.name}#{V2.name}" if V1.name and V2.name else None
    return SeifertMatrix(rows, name=name, validate=False)


def arf_invariant(V):
    """0 iff ``Delta(-1) = +-1 (mod 8)``."""
    d = abs(int(alexander_polynomial(V)(-1)))
    return 0 if d % 8 in (1, 7) else 1


def levine_tristram_at(V, w):
    """Signature of ``(1 - w)V + (1 - conj w)V^T`` at an exact circle point."""
    if not isinstance(w, UnitCirclePoint):
        w = UnitCirclePoint(*w)
    a = GaussQ(1 - w.re, -w.im)
    b = a.conj()
    E = V.entries
    n = V.size
    H = [[a * E[i][j] + b * E[j][i] for j in range(n)] for i in range(n)]
    return signature(H)


def _signature_at_tangent(V, s):
    if s is None:
        return levine_tristram_at(V, MINUS_ONE)
    return levine_tristram_at(V, UnitCirclePoint.from_tangent(to_fraction(Q(s))))


# -- unit circle roots of the Alexander polynomial ----------------------------

def symmetric_reduction(delta):
    """The polynomial ``p`` with ``t^-m Delta(t) = p(t + 1/t)``, as a dense list.

    Raises if ``Delta`` is not symmetric under ``t -> 1/t`` up to a power of t.
    """
    delta = normalize_unit(delta)
    if delta.span % 2 or delta.involution().shift(delta.span) != delta:
        raise ValueError("Alexander polynomial is not symmetric")
    m = delta.span // 2
    L = delta.shift(-m)
    c = L.terms
    # Dickson polynomials D_j(x) = t^j + t^-j in x = t + 1/t
    dick = [[Q(2)], [Q(0), Q(1)]]
    for j in range(2, m + 1):
        dick.append(kernels.sub(kernels.mul([Q(0), Q(1)], dick[-1]), dick[-2]))
    p = [c.get(0, Q(0))]
    for j in range(1, m + 1):
        p = kernels.add(p, kernels.scale(dick[j], c.get(j, Q(0))))
    return kernels.trim(p)


def tangent_polynomial(p):
    """``(1 + s^2)^deg p * p(2(1 - s^2)/(1 + s^2))`` as a dense list in ``s``."""
    deg = len(p) - 1
    num = [Q(2), Q(0), Q(-2)]
    den = [Q(1), Q(0), Q(1)]
    out = []
    for i, c in enumerate(p):
        if not c:
            continue
        term = [c]
        for _ in range(i):
            term = kernels.mul(term, num)
        for _ in range(deg - i):
            term = kernels.mul(term, den)
        out = kernels.add(out, term)
    return out


def cyclotomic_factors(delta):
    """Multiset ``{k: multiplicity}`` of cyclotomic factors of ``delta`` and the cofactor."""
    rest = normalize_unit(delta)
    found = {}
    deg = rest.span
    k = 1
    while deg > 0 and k <= 2 * deg * deg + 2:
        if euler_phi(k) <= rest.span:
            phi = cyclotomic(k)
            while rest.span >= phi.span:
                q, r = rest.divmod(phi)
                if r:
                    break
                rest = q
                found[k] = found.get(k, 0) + 1
        k += 1
    return found, normalize_unit(rest)


@dataclass(frozen=True)
class Jump:
    """An isolating interval ``[s_lo, s_hi]`` of ``tan(theta/2)`` for one jump angle.

    ``turn`` is the exact angle as a fraction of a full turn when the root is
    a root of unity.
    """

    s_lo: Fraction
    s_hi: Fraction
    turn: Optional[Fraction] = None

    def turn_enclosure(self, prec=80):
        """Rigorous rational bounds on ``theta / 2pi``."""
        return _turn_bounds(self.s_lo, self.s_hi, prec)


_IV_LOCK = threading.Lock()


def _mpi_to_fraction(raw):
    p, q = libmp.to_rational(raw)
    return Fraction(int(p), int(q))


def _turn_bounds(s_lo, s_hi, prec):
    """Bounds on ``atan2(s, 1)/pi`` over ``[s_lo, s_hi]`` (mirrored when negative)."""
    def at(s):
        s = Fraction(s)
        x = iv.atan2(iv.mpf(s.numerator) / iv.mpf(s.denominator), iv.mpf(1)) / iv.pi
        return x._mpi_

    # the interval context keeps its precision globally
    with _IV_LOCK:
        saved = iv.prec
        iv.prec = prec
        try:
            lo = _mpi_to_fraction(at(s_lo)[0])
            hi = _mpi_to_fraction(at(s_hi)[1])
        finally:
            iv.prec = saved
    if s_hi <= 0:
        return 1 + lo, 1 + hi
    return lo, hi


@dataclass(frozen=True)
class SignatureFunction:
    """Piecewise constant Levine-Tristram signature on the circle.

    ``jumps`` are ordered by angle in ``(0, 2pi)``; ``arc_values[i]`` is the
    signature on the open arc before ``jumps[i]`` (the last entry covers the
    arc ending at angle ``2pi``).
    """

    jumps: tuple
    arc_values: tuple
    cyclotomic_flag: bool
    alexander: LaurentPoly = field(compare=False)
    samples: tuple = field(default=(), compare=False)

    @property
    def upper(self):
        """Jumps and arc values restricted to angles in ``(0, pi]``."""
        n = len(self.jumps) // 2
        return self.jumps[:n], self.arc_values[: n + 1]

    def value_at_tangent(self, s):
        """Signature at ``w(s)`` for ``s`` outside every isolating interval."""
        s = Fraction(s)
        if s == 0:
            return 0
        upper, vals = self.upper
        a = abs(s)
        for i, j in enumerate(upper):
            if a < j.s_lo:
                return vals[i]
            if a <= j.s_hi:
                raise ValueError("point lies in an isolating interval")
        return vals[len(upper)]


def _unit_circle_isolation(delta, width):
    p = symmetric_reduction(delta)
    if len(p) <= 1:
        return p, [], []
    q = sturm.squarefree(tangent_polynomial(p))
    if len(q) <= 1:
        return p, q, []
    if not kernels.horner(p, Q(-2)):
        raise ValueError("Delta(-1) = 0 cannot occur for a knot")
    bound = sturm.root_bound(q)
    ivs = sturm.isolate_roots(q, Q(0), bound)
    ivs = [sturm.refine(q, iv_, width) for iv_ in ivs]
    return p, q, ivs


@lru_cache(maxsize=256)
def _signature_function(V, precision):
    delta = alexander_polynomial(V)
    width = Q(1, 2 ** precision)
    p, q, ivs = _unit_circle_isolation(delta, width)
    samples = _arc_samples(q, ivs)
    cyc, rest = cyclotomic_factors(delta)
    flag = True
    if rest.span > 0:
        prest = symmetric_reduction(rest)
        if len(prest) > 1:
            qrest = sturm.squarefree(tangent_polynomial(prest))
            if len(qrest) > 1 and sturm.count_roots(sturm.sturm_sequence(qrest), Q(0), sturm.root_bound(qrest)):
                flag = False
    turns = [None] * len(ivs)
    if flag and ivs:
        exact = sorted(
            {Fraction(j, k) for k in cyc for j in range(1, k) if Fraction(j, k) <= Fraction(1, 2) and _coprime(j, k)}
        )
        if len(exact) != len(ivs):  # pragma: no cover - consistency guard
            raise ArithmeticError("root-of-unity count disagrees with Sturm isolation")
        for f, (a, b) in zip(exact, ivs):
            lo, hi = _turn_bounds(Fraction(a), Fraction(b), 80)
            if not lo <= f <= hi:  # pragma: no cover - consistency guard
                raise ArithmeticError("exact jump angle outside its isolating interval")
        turns = exact
    upper = [Jump(to_fraction(Q(a)), to_fraction(Q(b)), f) for (a, b), f in zip(ivs, turns)]
    vals = [_signature_at_tangent(V, s) for s in samples]
    mirrored = [
        Jump(-j.s_hi, -j.s_lo, (1 - j.turn) if j.turn is not None else None) for j in reversed(upper)
    ]
    arc_values = vals + vals[-2::-1]
    return SignatureFunction(
        jumps=tuple(upper + mirrored),
        arc_values=tuple(arc_values),
        cyclotomic_flag=flag,
        alexander=delta,
        samples=tuple(None if s is None else to_fraction(s) for s in samples),
    )


def _arc_samples(q, ivs):
    """One rational tangent per upper arc; ``None`` stands for ``w = -1``.

    Degenerate intervals ``(m, m)`` mark exact rational roots and are never
    used as sample points themselves.
    """
    samples = []
    prev = None
    for i, (a, b) in enumerate(ivs):
        while prev is None and a == 0:
            a, b = sturm.refine(q, (a, b), (b - a) / 4)
            ivs[i] = (a, b)
        if prev is None:
            lo, hi = (a / 2, a) if a != b else (a / 4, a / 2)
        else:
            p_lo, p_hi = prev
            lo = p_hi if p_lo != p_hi else (p_hi + a) / 2
            hi = a if a != b else (lo + a) / 2
            if p_lo == p_hi and a == b:
                lo = hi = (p_hi + a) / 2
        samples.append(sturm.simplest_between(lo, hi))
        prev = (a, b)
    samples.append(None)
    return samples


def _coprime(a, b):
    while b:
        a, b = b, a % b
    return a == 1


def signature_function(V, precision=50):
    """Jump intervals (width at most ``2**-precision`` in ``s``) and arc values."""
    return _signature_function(V, precision)


@dataclass(frozen=True)
class RhoIntegral:
    """Normalized integral of the signature function.

    ``exact`` is present when every unit-circle root of Delta is a root of
    unity; ``enclosure`` is always a rigorous rational interval.
    """

    exact: Optional[Fraction]
    enclosure: tuple

    @property
    def width(self):
        return self.enclosure[1] - self.enclosure[0]

    def excludes_zero(self):
        lo, hi = self.enclosure
        return lo > 0 or hi < 0

    def to_json(self):
        return {
            "exact": None if self.exact is None else str(self.exact),
            "enclosure": [str(self.enclosure[0]), str(self.enclosure[1])],
        }


def rho_integral(V, precision=50):
    """Integral of the signature function over the circle, total measure 1.

    With upper-half jumps at turns ``f_1 < ... < f_N`` and arc values
    ``v_0, ..., v_N`` (``v_0 = 0``), the integral is
    ``v_N - 2 * sum_i f_i (v_i - v_{i-1})``.
    """
    sf = signature_function(V, precision)
    upper, vals = sf.upper
    if not upper:
        v = Fraction(vals[0])
        return RhoIntegral(v, (v, v))
    coeffs = [-2 * (vals[i + 1] - vals[i]) for i in range(len(upper))]
    base = Fraction(vals[-1])
    exact = None
    if sf.cyclotomic_flag:
        exact = base + sum((c * j.turn for c, j in zip(coeffs, upper)), Fraction(0))
    target = Fraction(1, 2 ** precision)
    scale = max(1, sum(abs(c) for c in coeffs))
    q = sturm.squarefree(tangent_polynomial(symmetric_reduction(sf.alexander)))
    intervals = [(Q(j.s_lo), Q(j.s_hi)) for j in upper]
    step = target / (4 * scale)
    prec = precision + 40
    while True:
        lo = hi = base
        for c, (a, b) in zip(coeffs, intervals):
            if not c:
                continue
            flo, fhi = _turn_bounds(to_fraction(a), to_fraction(b), prec)
            lo += min(c * flo, c * fhi)
            hi += max(c * flo, c * fhi)
        if hi - lo <= target:
            break
        intervals = [(a, b) if a == b else sturm.refine(q, (a, b), Q(step)) for a, b in intervals]
        step /= 16
        prec += 8
    if exact is not None and not lo <= exact <= hi:  # pragma: no cover - consistency guard
        raise ArithmeticError("exact value outside rigorous enclosure")
    return RhoIntegral(exact, (lo, hi))


# -- presets and descriptors --------------------------------------------------

TREFOIL = SeifertMatrix([[-1, 1], [0, -1]], name="trefoil")
FIGURE8 = SeifertMatrix([[1, 1], [0, -1]], name="figure8")
UNKNOT = SeifertMatrix([], name="unknot")
J = SeifertMatrix(connected_sum(TREFOIL, TREFOIL).entries, name="J")

PRESETS = {"trefoil": TREFOIL, "figure8": FIGURE8, "unknot": UNKNOT, "J": J}


def preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown knot preset {name!r}; known: {sorted(PRESETS)}") from None


def load_knot(descriptor):
    """Knot from a preset name, a ``{"name", "seifert"}`` mapping, or JSON text."""
    if isinstance(descriptor, SeifertMatrix):
        return descriptor
    if isinstance(descriptor, str):
        if descriptor in PRESETS:
            return PRESETS[descriptor]
        descriptor = json.loads(descriptor)
    if isinstance(descriptor, list):
        return SeifertMatrix(descriptor)
    if "seifert" not in descriptor:
        raise ValueError("knot descriptor needs a 'seifert' matrix")
    return SeifertMatrix(descriptor["seifert"], name=descriptor.get("name"))
