"""Exact rational arithmetic backend.

All core computations run on exact rationals; no floating point enters any
invariant.  gmpy2's ``mpq`` is used when available (it is markedly faster on
the arrangement hot paths), with ``fractions.Fraction`` as a drop-in
fallback.  Both types expose ``numerator``/``denominator`` and interoperate
freely with Python ints.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

ZERO = Rat(0)
ONE = Rat(1)


def rat(num, den=1):
    """Exact rational num/den."""
    return Rat(num, den)


def parse_rat(text: str):
    """Parse "p/q" or "p" (ASCII or U+2212 minus) into a Rat."""
    s = str(text).strip().replace("−", "-")
    if "/" in s:
        num, den = s.split("/", 1)
        return Rat(int(num), int(den))
    return Rat(int(s))


def rat_str(x) -> str:
    """Canonical "p/q" (or "p" for integers) rendering."""
    x = Rat(x)
    n, d = x.numerator, x.denominator
    return f"{n}/{d}" if d != 1 else f"{n}"


def floor_rat(x) -> int:
    x = Rat(x)
    return int(x.numerator // x.denominator)


def ceil_rat(x) -> int:
    return -floor_rat(-Rat(x))


def as_integer(x):
    """Exact integer value of x, or None when x is not an integer."""
    x = Rat(x)
    return int(x.numerator) if x.denominator == 1 else None
