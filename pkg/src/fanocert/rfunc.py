"""Rational functions of the integer dimension parameter ``M``.

A :class:`ParamCoeff` is ``num(M) / den(M)`` with integer polynomials
stored densely, constant term first.  Construction cancels the polynomial
gcd and normalises signs, so two equal rational functions have identical
fields.

Monotonicity on a tail ``[M0, oo)`` is certified by Sturm sequences applied
to the numerator of the derivative; nothing is sampled.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from functools import reduce

from .errors import DomainError

Poly = tuple  # tuple[int, ...], constant term first


# -- dense polynomial helpers ---------------------------------------------


def _trim(p) -> tuple:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p) if p else (0,)


def poly_is_zero(p) -> bool:
    return len(p) == 1 and p[0] == 0


def degree(p) -> int:
    return -1 if poly_is_zero(p) else len(p) - 1


def poly_add(p, q) -> tuple:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_neg(p) -> tuple:
    return tuple(-c for c in p)


def poly_sub(p, q) -> tuple:
    return poly_add(p, poly_neg(q))


def poly_mul(p, q) -> tuple:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def poly_scale(p, c) -> tuple:
    return _trim([c * a for a in p])


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_deriv(p) -> tuple:
    if len(p) == 1:
        return (0,)
    return _trim([i * p[i] for i in range(1, len(p))])


def poly_divmod(p, q):
    """Division over Q. Returns (quotient, remainder) with Fraction entries."""
    if poly_is_zero(q):
        raise ZeroDivisionError("polynomial division by zero")
    p, q = _trim(p), _trim(q)
    r = [Fraction(c) for c in p]
    dq = degree(q)
    lead = Fraction(q[-1])
    if degree(p) < dq:
        return (Fraction(0),), _trim(r)
    quo = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        coef = r[k + dq] / lead
        quo[k] = coef
        if coef:
            for j, b in enumerate(q):
                r[k + j] -= coef * b
    return _trim(quo), _trim(r[:dq] if dq > 0 else [0])


def primitive(p) -> tuple:
    """Scale a rational polynomial to coprime integers with positive lead."""
    p = _trim(p)
    if poly_is_zero(p):
        return (0,)
    den = reduce(math.lcm, (Fraction(c).denominator for c in p), 1)
    ints = [int(Fraction(c) * den) for c in p]
    g = abs(reduce(math.gcd, ints))
    if ints[-1] < 0:
        g = -g
    return tuple(c // g for c in ints)


def poly_gcd(p, q) -> tuple:
    a, b = primitive(p), primitive(q)
    if poly_is_zero(a):
        return b if not poly_is_zero(b) else (1,)
    while not poly_is_zero(b):
        _, r = poly_divmod(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def squarefree(p) -> tuple:
    p = primitive(p)
    if degree(p) <= 0:
        return p
    g = poly_gcd(p, poly_deriv(p))
    if degree(g) <= 0:
        return p
    quo, _ = poly_divmod(p, g)
    return primitive(quo)


def sturm_sequence(p) -> list[tuple]:
    seq = [primitive(p)]
    d = poly_deriv(seq[0])
    if poly_is_zero(d):
        return seq
    seq.append(primitive(d))
    while True:
        _, r = poly_divmod(seq[-2], seq[-1])
        if poly_is_zero(r):
            return seq
        # keep the sign of -r; primitive() would normalise the lead
        neg = [-c for c in r]
        den = reduce(math.lcm, (Fraction(c).denominator for c in neg), 1)
        ints = [int(Fraction(c) * den) for c in neg]
        g = abs(reduce(math.gcd, ints))
        seq.append(_trim([c // g for c in ints]))


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots_above(p, a: int) -> int:
    """Number of distinct real roots of ``p`` in the open ray ``(a, oo)``."""
    p = squarefree(p)
    if degree(p) <= 0:
        return 0
    if poly_eval(p, a) == 0:
        p, _ = poly_divmod(p, (-a, 1))
        p = primitive(p)
        if degree(p) <= 0:
            return 0
    seq = sturm_sequence(p)
    at_a = _sign_changes(poly_eval(s, a) for s in seq)
    at_inf = _sign_changes(s[-1] for s in seq)
    return at_a - at_inf


def sign_on_tail(p, a: int) -> int | None:
    """Sign of ``p`` on ``(a, oo)`` if it is constant there, else ``None``."""
    if poly_is_zero(p):
        return 0
    if count_roots_above(p, a) > 0:
        return None
    return 1 if p[-1] > 0 else -1


def format_poly(p, var: str = "M") -> str:
    p = _trim(p)
    if poly_is_zero(p):
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


# -- rational functions ----------------------------------------------------


class Trend(enum.Enum):
    DECREASING_ON_TAIL = "DecreasingOnTail"
    INCREASING_ON_TAIL = "IncreasingOnTail"
    CONSTANT = "Constant"
    NOT_CERTIFIED = "NotCertified"

    @property
    def non_increasing(self) -> bool:
        return self in (Trend.DECREASING_ON_TAIL, Trend.CONSTANT)

    @property
    def non_decreasing(self) -> bool:
        return self in (Trend.INCREASING_ON_TAIL, Trend.CONSTANT)

    def flipped(self) -> Trend:
        if self is Trend.DECREASING_ON_TAIL:
            return Trend.INCREASING_ON_TAIL
        if self is Trend.INCREASING_ON_TAIL:
            return Trend.DECREASING_ON_TAIL
        return self


class Infinite:
    """Divergent limit at M -> oo, with the sign of the divergence."""

    __slots__ = ("sign",)

    def __init__(self, sign: int):
        self.sign = sign

    def __eq__(self, other):
        return isinstance(other, Infinite) and other.sign == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __repr__(self):
        return "Infinite(+)" if self.sign > 0 else "Infinite(-)"


class ParamCoeff:
    """``num(M)/den(M)`` in lowest terms with integer coefficients."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num = _trim(num)
        den = _trim(den)
        if poly_is_zero(den):
            raise ZeroDivisionError("denominator polynomial is identically zero")
        if poly_is_zero(num):
            self.num, self.den = (0,), (1,)
            return
        g = poly_gcd(num, den)
        if degree(g) > 0:
            num, _ = poly_divmod(num, g)
            den, _ = poly_divmod(den, g)
        # clear denominators jointly, then remove the joint content
        fr = [Fraction(c) for c in num] + [Fraction(c) for c in den]
        scale = reduce(math.lcm, (c.denominator for c in fr), 1)
        ints = [int(c * scale) for c in fr]
        content = abs(reduce(math.gcd, ints))
        if fr[-1] < 0:
            content = -content
        ints = [c // content for c in ints]
        self.num = _trim(ints[: len(num)])
        self.den = _trim(ints[len(num):])

    @classmethod
    def make(cls, num, den=(1,)) -> ParamCoeff:
        return cls(num, den)

    @classmethod
    def const(cls, value) -> ParamCoeff:
        q = Fraction(value)
        return cls.make((q.numerator,), (q.denominator,))

    @classmethod
    def param(cls) -> ParamCoeff:
        return cls.make((0, 1))

    # -- queries -----------------------------------------------------------

    @property
    def is_constant(self) -> bool:
        return degree(self.num) <= 0 and degree(self.den) == 0

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} depends on M")
        return Fraction(self.num[0], self.den[0])

    def is_zero(self) -> bool:
        return poly_is_zero(self.num)

    def eval_at(self, M) -> Fraction:
        d = poly_eval(self.den, Fraction(M))
        if d == 0:
            raise DomainError(f"{self} has a pole at M={M}")
        return Fraction(poly_eval(self.num, Fraction(M))) / d

    def limit_at_infinity(self) -> Fraction | Infinite:
        dn, dd = degree(self.num), degree(self.den)
        if dn < dd:
            return Fraction(0)
        if dn == dd:
            return Fraction(self.num[-1], self.den[-1])
        return Infinite(1 if self.num[-1] * self.den[-1] > 0 else -1)

    def derivative_numerator(self) -> tuple:
        return poly_sub(
            poly_mul(poly_deriv(self.num), self.den),
            poly_mul(self.num, poly_deriv(self.den)),
        )

    def check_no_pole_from(self, M0: int) -> None:
        if degree(self.den) <= 0:
            return
        if poly_eval(self.den, M0) == 0 or count_roots_above(self.den, M0) > 0:
            raise DomainError(f"{self} has a pole in [{M0}, oo)")

    def certify_monotone(self, M0: int) -> Trend:
        """Certify the direction of variation on ``[M0, oo)``.

        The derivative has the sign of ``num'*den - num*den'`` away from
        poles, so a constant sign of that polynomial on ``(M0, oo)``
        settles the question.
        """
        self.check_no_pole_from(M0)
        dnum = self.derivative_numerator()
        s = sign_on_tail(dnum, M0)
        if s is None:
            return Trend.NOT_CERTIFIED
        if s == 0:
            return Trend.CONSTANT
        return Trend.INCREASING_ON_TAIL if s > 0 else Trend.DECREASING_ON_TAIL

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other) -> ParamCoeff | None:
        if isinstance(other, ParamCoeff):
            return other
        if isinstance(other, (int, Fraction)):
            return ParamCoeff.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ParamCoeff.make(
            poly_add(poly_mul(self.num, o.den), poly_mul(o.num, self.den)),
            poly_mul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return ParamCoeff.make(poly_neg(self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ParamCoeff.make(poly_mul(self.num, o.num), poly_mul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return ParamCoeff.make(poly_mul(self.num, o.den), poly_mul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ParamCoeff.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"ParamCoeff({self})"

    def __str__(self):
        num = format_poly(self.num)
        if self.den == (1,):
            return num
        if degree(self.num) > 0 and sum(1 for c in self.num if c) > 1:
            num = f"({num})"
        den = format_poly(self.den)
        if degree(self.den) > 0 or den.startswith("-"):
            den = f"({den})"
        return f"{num}/{den}"


def eval_at(c: ParamCoeff, M) -> Fraction:
    return c.eval_at(M)


def limit_at_infinity(c: ParamCoeff) -> Fraction | Infinite:
    return c.limit_at_infinity()


def certify_monotone(c: ParamCoeff, M0: int) -> Trend:
    return c.certify_monotone(M0)
