"""Select the coefficient field and the polynomial kernel implementation.

``KNOTSPLIT_PURE_PYTHON=1`` forces the pure-Python kernels even when the
compiled extension is importable.
"""
import os
from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - gmpy2 ships with the default install
    Q = Fraction

if os.environ.get("KNOTSPLIT_PURE_PYTHON") == "1":
    from . import _kernels_py as kernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels
        BACKEND = "python"


def to_fraction(x):
    """Exact conversion of a coefficient to :class:`fractions.Fraction`."""
    return Fraction(int(x.numerator), int(x.denominator))


__all__ = ["Q", "BACKEND", "kernels", "to_fraction"]
