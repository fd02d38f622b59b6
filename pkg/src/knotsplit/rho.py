"""Bookkeeping for rho-values: a rational interval plus a formal integer
combination of companion symbols ``rho(J_i)``.

Symbols are treated as linearly independent over Z, and independent of the
numeric part only when that part is exactly zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["RhoValue"]


@dataclass(frozen=True)
class RhoValue:
    lo: Fraction = Fraction(0)
    hi: Fraction = Fraction(0)
    symbols: tuple = ()

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError("empty enclosure")
        merged = {}
        for name, c in self.symbols:
            merged[name] = merged.get(name, 0) + int(c)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "symbols", tuple(sorted((k, v) for k, v in merged.items() if v)))

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def exact_value(cls, q):
        q = Fraction(q)
        return cls(q, q)

    @classmethod
    def symbol(cls, name, coeff=1):
        return cls(symbols=((name, coeff),))

    @classmethod
    def from_integral(cls, integral):
        if integral.exact is not None:
            return cls.exact_value(integral.exact)
        return cls(*integral.enclosure)

    @property
    def exact(self):
        return self.lo if self.lo == self.hi else None

    @property
    def enclosure(self):
        return self.lo, self.hi

    @property
    def symbol_map(self):
        return dict(self.symbols)

    def __add__(self, other):
        return RhoValue(self.lo + other.lo, self.hi + other.hi, self.symbols + other.symbols)

    def __neg__(self):
        return RhoValue(-self.hi, -self.lo, tuple((k, -v) for k, v in self.symbols))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n):
        n = int(n)
        if n >= 0:
            return RhoValue(n * self.lo, n * self.hi, tuple((k, n * v) for k, v in self.symbols))
        return -((-n) * self)

    def is_zero(self):
        return self.lo == 0 and self.hi == 0 and not self.symbols

    def contains_zero(self):
        return self.lo <= 0 <= self.hi and not self.symbols

    def certainly_nonzero(self):
        """Nonzero for every admissible value of the symbols and the enclosure."""
        if self.symbols:
            return self.lo == 0 and self.hi == 0
        return self.lo > 0 or self.hi < 0

    def __str__(self):
        parts = []
        if self.exact is not None:
            if self.exact or not self.symbols:
                parts.append(str(self.exact))
        else:
            parts.append(f"[{self.lo}, {self.hi}]")
        for k, v in self.symbols:
            parts.append(f"{v}*rho({k})" if v != 1 else f"rho({k})")
        return " + ".join(parts)

    def to_json(self):
        data = {"symbols": dict(self.symbols)}
        if self.exact is not None:
            data["exact"] = str(self.exact)
        else:
            data["enclosure"] = [str(self.lo), str(self.hi)]
        return data
