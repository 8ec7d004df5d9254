"""Exact scalars: rationals and the real quadratic field Q(sqrt 2).

Rationals are plain :class:`fractions.Fraction` values, which are kept in
lowest terms with a positive denominator on construction.  Elements of
Q(sqrt 2) are :class:`QuadExt` values ``a + b*sqrt2``.  Both are immutable.

``QuadExt`` also accepts ``gmpy2.mpq`` parts; the exact simplex uses that to
run the same code about ten times faster.  Mixed arithmetic keeps the faster
type, and ``to_fraction`` converts back.
"""

from __future__ import annotations

import enum
import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

Rat = Fraction


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def sign_q2(a, b) -> int:
    """Exact sign of ``a + b*sqrt2`` for rational ``a``, ``b``.

    When the parts disagree in sign, compare ``a**2`` against ``2*b**2``.
    """
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    lhs = a * a
    rhs = 2 * b * b
    if lhs == rhs:  # impossible for nonzero rationals, kept for safety
        return 0
    if lhs > rhs:
        return 1 if a > 0 else -1
    return 1 if b > 0 else -1


class QuadExt:
    """An element ``a + b*sqrt2`` of Q(sqrt 2)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if _is_exact_rational(a) else Fraction(a)
        self.b = b if _is_exact_rational(b) else Fraction(b)

    @classmethod
    def _raw(cls, a, b) -> QuadExt:
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        return obj

    @classmethod
    def sqrt2(cls) -> QuadExt:
        return cls(0, 1)

    # -- conversions -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> QuadExt:
        return QuadExt._raw(self.a, -self.b)

    def norm(self):
        return self.a * self.a - 2 * self.b * self.b

    def sign(self) -> int:
        return sign_q2(self.a, self.b)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(2.0)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __repr__(self) -> str:
        return f"QuadExt({self.a}, {self.b})"

    def __str__(self) -> str:
        return format_scalar(self)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, QuadExt):
            return QuadExt._raw(self.a + other.a, self.b + other.b)
        if _is_rational_like(other):
            return QuadExt._raw(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QuadExt._raw(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, QuadExt):
            return QuadExt._raw(self.a - other.a, self.b - other.b)
        if _is_rational_like(other):
            return QuadExt._raw(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if _is_rational_like(other):
            return QuadExt._raw(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QuadExt):
            a, b, c, d = self.a, self.b, other.a, other.b
            return QuadExt._raw(a * c + 2 * b * d, a * d + b * c)
        if _is_rational_like(other):
            return QuadExt._raw(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QuadExt):
            n = other.norm()
            if n == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt2)")
            num = self * other.conjugate()
            return QuadExt._raw(num.a / n, num.b / n)
        if _is_rational_like(other):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt2)")
            return QuadExt._raw(self.a / other, self.b / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_rational_like(other):
            return QuadExt._raw(other, 0 * other) / self
        return NotImplemented

    # -- order and equality ------------------------------------------------

    def _cmp(self, other) -> int:
        if isinstance(other, QuadExt):
            return sign_q2(self.a - other.a, self.b - other.b)
        if _is_rational_like(other):
            return sign_q2(self.a - other, self.b)
        raise TypeError(f"cannot compare QuadExt with {type(other).__name__}")

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.a == other.a and self.b == other.b
        if _is_rational_like(other):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0


Scalar = Union[Fraction, QuadExt]


def _is_exact_rational(x) -> bool:
    return isinstance(x, Fraction) or type(x).__name__ == "mpq"


def _is_rational_like(x) -> bool:
    return isinstance(x, (int, Rational)) or type(x).__name__ == "mpq"


def qext_mul(x: QuadExt, y: QuadExt) -> QuadExt:
    return as_quad(x) * as_quad(y)


def qext_cmp(x: Scalar | int, y: Scalar | int) -> Ordering:
    """Exact total order on Q(sqrt 2); no floating point involved."""
    return Ordering(as_quad(x)._cmp(y))


def sign(x) -> int:
    if isinstance(x, QuadExt):
        return x.sign()
    return (x > 0) - (x < 0)


def as_quad(x) -> QuadExt:
    if isinstance(x, QuadExt):
        return x
    return QuadExt(x, 0)


def to_fraction(x):
    """Convert an exact scalar (possibly with mpq parts) to canonical form.

    Returns a ``Fraction`` when the irrational part vanishes, otherwise a
    ``QuadExt`` with ``Fraction`` parts.
    """
    if isinstance(x, QuadExt):
        a = Fraction(int(x.a.numerator), int(x.a.denominator))
        b = Fraction(int(x.b.numerator), int(x.b.denominator))
        return a if b == 0 else QuadExt._raw(a, b)
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


def scalar_max(*xs):
    best = xs[0]
    for x in xs[1:]:
        if sign(x - best) > 0:
            best = x
    return best


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Render in the DSL scalar syntax: ``7``, ``-3/4``, ``10 + 2*sqrt2``."""
    x = to_fraction(x)
    if isinstance(x, Fraction):
        return _fmt_rat(x)
    a, b = x.a, x.b
    if b == 1:
        tail = "sqrt2"
    elif b == -1:
        tail = "sqrt2"
    else:
        tail = f"{_fmt_rat(abs(b))}*sqrt2"
    if a == 0:
        return tail if b > 0 else f"-{tail}"
    op = "+" if b > 0 else "-"
    return f"{_fmt_rat(a)} {op} {tail}"


_SCALAR_RE = re.compile(
    r"""^\s*(?:
        (?P<a>[+-]?\d+(?:/\d+)?)\s*(?:(?P<op>[+-])\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?sqrt2)?
      | (?P<sgn>[+-]?)\s*(?:(?P<b2>\d+(?:/\d+)?)\s*\*\s*)?sqrt2
    )\s*$""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``p``, ``p/q``, ``a + b*sqrt2`` or ``b*sqrt2``."""
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValueError(f"not an exact scalar: {text!r}")
    if m.group("a") is not None:
        a = Fraction(m.group("a"))
        if m.group("op") is None:
            return a
        b = Fraction(m.group("b") or 1)
        if m.group("op") == "-":
            b = -b
        return to_fraction(QuadExt(a, b))
    b = Fraction(m.group("b2") or 1)
    if m.group("sgn") == "-":
        b = -b
    return to_fraction(QuadExt(0, b))
