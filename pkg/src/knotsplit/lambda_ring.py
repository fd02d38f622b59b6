"""Exact arithmetic in the Laurent ring Q[t, t^-1], its fraction field, and
the quotient Q(t)/Q[t, t^-1].

Coefficients are exact rationals throughout.  A :class:`LaurentPoly` is
stored densely as a lowest exponent plus a tuple of coefficients; the
dense coefficient lists are handed to the kernels in :mod:`._backend`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ._backend import Q, kernels

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "QtModLambda",
    "ZERO_COSET",
    "poly_to_literal",
    "t",
    "ONE",
    "ZERO",
    "as_rational",
    "normalize_unit",
    "monic_normalize",
    "gcd_bezout",
    "poly_gcd",
    "poly_lcm",
    "cyclotomic",
    "euler_phi",
    "is_in_T",
    "reduce_mod",
    "reduce_mod_lambda",
    "parse_poly",
    "format_poly",
]


def as_rational(x):
    """Coerce ints, Fractions, mpq values and ``"num/den"`` strings to ``Q``."""
    if isinstance(x, str):
        return Q(Fraction(x.strip()))
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not accepted")
    return Q(x)


class LaurentPoly:
    """Immutable element of Q[t, t^-1]."""

    __slots__ = ("low", "coeffs", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: terms}
        clean = {int(e): as_rational(c) for e, c in terms.items() if c}
        if not clean:
            self._set(0, ())
            return
        lo = min(clean)
        hi = max(clean)
        self._set(lo, tuple(clean.get(e, Q(0)) for e in range(lo, hi + 1)))

    def _set(self, low, coeffs):
        self.low = low
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def from_coeffs(cls, coeffs, low=0):
        """Build from a dense coefficient list (constant term first)."""
        coeffs = list(coeffs)
        start = 0
        while start < len(coeffs) and not coeffs[start]:
            start += 1
        end = len(coeffs)
        while end > start and not coeffs[end - 1]:
            end -= 1
        obj = cls.__new__(cls)
        if start == end:
            obj._set(0, ())
        else:
            obj._set(low + start, tuple(Q(c) for c in coeffs[start:end]))
        return obj

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls.from_coeffs([coeff], exponent)

    # -- basic structure --------------------------------------------------
    @property
    def terms(self):
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def high(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.low + len(self.coeffs) - 1

    @property
    def span(self):
        """Euclidean norm on the Laurent ring: top minus bottom exponent."""
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def lead(self):
        return self.coeffs[-1]

    @property
    def trail(self):
        return self.coeffs[0]

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_unit(self):
        return len(self.coeffs) == 1

    def is_ordinary(self):
        """True for an ordinary polynomial with nonzero constant term (or zero)."""
        return not self.coeffs or self.low == 0

    def dense(self):
        """Coefficient list of the ordinary polynomial t^-low * self."""
        return list(self.coeffs)

    def shift(self, k):
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        obj = LaurentPoly.__new__(LaurentPoly)
        obj._set(self.low + k, self.coeffs)
        return obj

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs and (not self.coeffs or self.low == other.low)
        if isinstance(other, (int, Fraction)) or type(other) is Q:
            return self == LaurentPoly(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low if self.coeffs else 0, self.coeffs))
        return self._hash

    # -- ring operations --------------------------------------------------
    @staticmethod
    def _coerce(x):
        if isinstance(x, LaurentPoly):
            return x
        return LaurentPoly(x)

    def _aligned(self, other):
        lo = min(self.low, other.low)
        a = [Q(0)] * (self.low - lo) + list(self.coeffs)
        b = [Q(0)] * (other.low - lo) + list(other.coeffs)
        return lo, a, b

    def __add__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo, a, b = self._aligned(other)
        return LaurentPoly.from_coeffs(kernels.add(a, b), lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly.from_coeffs([-c for c in self.coeffs], self.low)

    def __sub__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            return self
        lo, a, b = self._aligned(other)
        return LaurentPoly.from_coeffs(kernels.sub(a, b), lo)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if not isinstance(other, (int, Fraction)) and type(other) is not Q:
                return NotImplemented
            c = as_rational(other)
            return LaurentPoly.from_coeffs(kernels.scale(list(self.coeffs), c), self.low)
        if not self.coeffs or not other.coeffs:
            return ZERO
        return LaurentPoly.from_coeffs(
            kernels.mul(list(self.coeffs), list(other.coeffs)), self.low + other.low
        )

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            return LaurentPoly.monomial(self.low * n, self.lead ** n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def involution(self):
        """The ring involution t -> t^-1."""
        if not self.coeffs:
            return self
        return LaurentPoly.from_coeffs(self.coeffs[::-1], -self.high)

    bar = involution

    def __call__(self, x):
        x = as_rational(x)
        v = kernels.horner(list(self.coeffs), x)
        if self.low:
            v = v * x ** self.low
        return v

    def derivative(self):
        return LaurentPoly({e - 1: e * c for e, c in self.terms.items() if e})

    # -- Euclidean structure ----------------------------------------------
    def divmod(self, other):
        """Division with remainder in the Laurent ring.

        Returns ``(q, r)`` with ``self = q*other + r`` and ``r`` of smaller
        span than ``other``.
        """
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.coeffs:
            return ZERO, ZERO
        q, r = kernels.divmod_(list(self.coeffs), list(other.coeffs))
        return (
            LaurentPoly.from_coeffs(q, self.low - other.low),
            LaurentPoly.from_coeffs(r, self.low),
        )

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{format_poly(other)} does not divide {format_poly(self)}")
        return q

    def divides(self, other):
        """True when ``self`` divides ``other`` in the Laurent ring."""
        if not self.coeffs:
            return not self._coerce(other).coeffs
        return not (self._coerce(other) % self)

    def __truediv__(self, other):
        return RationalFunction(self, self._coerce(other))

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


ZERO = LaurentPoly()
ONE = LaurentPoly(1)
t = LaurentPoly.monomial(1)


def normalize_unit(p):
    """Multiply by the unique ``+-t^k`` giving an ordinary polynomial with
    nonzero constant term and positive leading coefficient."""
    p = LaurentPoly._coerce(p)
    if not p:
        raise ValueError("zero polynomial has no unit normalization")
    q = p.shift(-p.low)
    return -q if q.lead < 0 else q


def monic_normalize(p):
    """Canonical generator of the ideal (p): ordinary, monic, nonzero constant term."""
    q = normalize_unit(p)
    return q * (1 / q.lead)


def _ext_euclid(a, b):
    """Extended Euclid on dense lists over Q; returns (g, s, u) with s*a+u*b = g, g monic."""
    r0, r1 = a, b
    s0, s1 = [Q(1)], []
    u0, u1 = [], [Q(1)]
    while r1:
        q, r = kernels.divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, kernels.sub(s0, kernels.mul(q, s1))
        u0, u1 = u1, kernels.sub(u0, kernels.mul(q, u1))
    inv = 1 / r0[-1]
    return kernels.scale(r0, inv), kernels.scale(s0, inv), kernels.scale(u0, inv)


def gcd_bezout(p, q):
    """Return ``(g, f, h)`` with ``f*p + h*q = g`` and ``g`` the monic gcd.

    Units ``t^k`` are stripped before running Euclid in Q[t]; the Bezout
    coefficients are shifted back into the Laurent ring afterwards.
    """
    p = LaurentPoly._coerce(p)
    q = LaurentPoly._coerce(q)
    if not p and not q:
        raise ValueError("gcd of two zero polynomials is undefined")
    if not q:
        g = monic_normalize(p)
        return g, (g.divmod(p)[0]), ZERO
    if not p:
        g = monic_normalize(q)
        return g, ZERO, g.divmod(q)[0]
    g, s, u = _ext_euclid(p.dense(), q.dense())
    g = LaurentPoly.from_coeffs(g)
    f = LaurentPoly.from_coeffs(s, -p.low)
    h = LaurentPoly.from_coeffs(u, -q.low)
    return g, f, h


def poly_gcd(p, q):
    p = LaurentPoly._coerce(p)
    q = LaurentPoly._coerce(q)
    if not p and not q:
        return ZERO
    if not q:
        return monic_normalize(p)
    if not p:
        return monic_normalize(q)
    a, b = p.dense(), q.dense()
    while b:
        a, b = b, kernels.divmod_(a, b)[1]
    return monic_normalize(LaurentPoly.from_coeffs(a))


def poly_lcm(p, q):
    if not p or not q:
        return ZERO
    return monic_normalize((p * q).exact_div(poly_gcd(p, q)))


def euler_phi(n):
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def cyclotomic(k):
    """The k-th cyclotomic polynomial, by exact division of t^k - 1."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("cyclotomic index must be a positive integer")
    num = [Q(-1)] + [Q(0)] * (k - 1) + [Q(1)]
    for d in range(1, k):
        if k % d == 0:
            num, r = kernels.divmod_(num, cyclotomic(d).dense())
            assert not r
    return LaurentPoly.from_coeffs(num)


def is_in_T(k):
    """True iff k has at least three distinct prime divisors."""
    if k < 1:
        raise ValueError("k must be positive")
    return len(_prime_factors(k)) >= 3


def _inverse_t_mod(d):
    """t^-1 modulo an ordinary polynomial d with nonzero constant term."""
    c0 = d.coeffs[0]
    return LaurentPoly.from_coeffs([-c / c0 for c in d.coeffs[1:]])


def reduce_mod(p, d):
    """Canonical residue of ``p`` modulo ``d``: ordinary, degree < deg d.

    ``d`` must be an ordinary polynomial with nonzero constant term (every
    ideal of the Laurent ring has such a generator).
    """
    if not d.is_ordinary() or not d:
        raise ValueError("modulus must be an ordinary polynomial with nonzero constant term")
    if not p:
        return ZERO
    if d.span == 0:
        return ZERO
    if p.low >= 0:
        return LaurentPoly.from_coeffs(kernels.divmod_([Q(0)] * p.low + list(p.coeffs), d.dense())[1])
    base = LaurentPoly.from_coeffs(kernels.divmod_(list(p.coeffs), d.dense())[1])
    tinv = _inverse_t_mod(d)
    n = -p.low
    while n:
        if n & 1:
            base = reduce_mod(base * tinv, d)
        n >>= 1
        if n:
            tinv = reduce_mod(tinv * tinv, d)
    return base


class RationalFunction:
    """Element of Q(t) kept in canonical form.

    The denominator is ordinary and monic with nonzero constant term and the
    fraction is reduced; the numerator may carry a Laurent power of t.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = LaurentPoly._coerce(num)
        den = ONE if den is None else LaurentPoly._coerce(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            return
        num = num.shift(-den.low)
        den = den.shift(-den.low)
        g = poly_gcd(num, den)
        if g.span > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead = den.lead
        self.num = num * (1 / lead)
        self.den = den * (1 / lead)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    @staticmethod
    def _coerce(x):
        return x if isinstance(x, RationalFunction) else RationalFunction(x)

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __bool__(self):
        return bool(self.num)

    def involution(self):
        return RationalFunction(self.num.involution(), self.den.involution())

    bar = involution

    def is_polynomial(self):
        return self.den.span == 0

    def __repr__(self):
        return f"RationalFunction({format_poly(self.num)!r}, {format_poly(self.den)!r})"


class QtModLambda:
    """Coset in Q(t)/Q[t, t^-1], stored as a proper reduced fraction n/d.

    ``d`` is monic, ordinary, with nonzero constant term and ``deg n < deg d``;
    the zero coset is ``0/1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, value=None):
        if value is None:
            self.num, self.den = ZERO, ONE
            return
        r = RationalFunction._coerce(value)
        d = r.den
        if d.span <= 0:
            self.num, self.den = ZERO, ONE
            return
        n = reduce_mod(r.num, d)
        g = poly_gcd(n, d) if n else d
        if g.span > 0:
            n = n.exact_div(g)
            d = d.exact_div(g)
        if d.span <= 0 or not n:
            self.num, self.den = ZERO, ONE
            return
        self.num, self.den = n, d

    @property
    def value(self):
        return RationalFunction(self.num, self.den)

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, QtModLambda):
            other = QtModLambda(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if not isinstance(other, QtModLambda):
            other = QtModLambda(other)
        if not other.num:
            return self
        if not self.num:
            return other
        return QtModLambda(self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return QtModLambda(RationalFunction(-self.num, self.den))

    def __sub__(self, other):
        if not isinstance(other, QtModLambda):
            other = QtModLambda(other)
        return self + (-other)

    def __mul__(self, p):
        """Module action of the Laurent ring on the quotient."""
        if isinstance(p, QtModLambda):
            return NotImplemented
        p = LaurentPoly._coerce(p)
        if not self.num or not p:
            return ZERO_COSET
        return QtModLambda(RationalFunction(self.num * p, self.den))

    __rmul__ = __mul__

    def involution(self):
        if not self.num:
            return self
        return QtModLambda(self.value.involution())

    bar = involution

    def __repr__(self):
        if not self.num:
            return "QtModLambda(0)"
        return f"QtModLambda(({format_poly(self.num)})/({format_poly(self.den)}))"


ZERO_COSET = QtModLambda()


def reduce_mod_lambda(r):
    """Canonical coset of a rational function (or a ``(num, den)`` pair)."""
    if isinstance(r, tuple):
        r = RationalFunction(*r)
    return QtModLambda(r)


# -- literal formats ------------------------------------------------------

def parse_poly(literal):
    """Parse ``[[exponent, "num/den"], ...]`` (also accepts ints as coefficients)."""
    if isinstance(literal, LaurentPoly):
        return literal
    if isinstance(literal, (int, str)):
        return LaurentPoly(as_rational(literal))
    terms = {}
    for pair in literal:
        if len(pair) != 2:
            raise ValueError(f"bad term literal {pair!r}")
        e, c = pair
        if isinstance(e, bool) or not isinstance(e, int):
            raise ValueError(f"exponent must be an integer, got {e!r}")
        terms[e] = terms.get(e, Q(0)) + as_rational(str(c) if not isinstance(c, int) else c)
    return LaurentPoly(terms)


def _fmt_q(c):
    c = Q(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_to_literal(p):
    return [[e, _fmt_q(c)] for e, c in sorted(p.terms.items(), reverse=True)]


def format_poly(p, var="t"):
    if not p:
        return "0"
    parts = []
    for e, c in sorted(p.terms.items(), reverse=True):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = _fmt_q(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{_fmt_q(a)}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out

