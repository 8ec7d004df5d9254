"""Constraint coefficients: Q(M)(sqrt 2) elements plus ``max`` nodes.

Every coefficient in a system is one of

* :class:`Lin` -- ``p(M) + q(M)*sqrt2`` with ``p``, ``q`` rational functions,
* :class:`Max` -- the pointwise maximum of two or more coefficients,
* :class:`Scaled` -- ``k * base`` where ``k`` is a ``Lin`` and ``base`` a
  ``Max`` or ``Sum``,
* :class:`Sum` -- a ``Lin`` plus one or more non-``Lin`` terms.

``max`` is resolved exactly when the parameter is fixed; its limit is the
maximum of the limits, and it is monotone when all arguments agree.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import QuadExt, format_scalar, scalar_max, sign, to_fraction
from .rfunc import Infinite, ParamCoeff, Trend

_ZERO = ParamCoeff.const(0)


def _lift(x) -> Coeff:
    if isinstance(x, Coeff):
        return x
    if isinstance(x, ParamCoeff):
        return Lin(x)
    if isinstance(x, QuadExt):
        x = to_fraction(x)
        if isinstance(x, QuadExt):
            return Lin(ParamCoeff.const(x.a), ParamCoeff.const(x.b))
    return Lin(ParamCoeff.const(Fraction(x)))


def _combine_trends(trends) -> Trend:
    trends = list(trends)
    if all(t is Trend.CONSTANT for t in trends):
        return Trend.CONSTANT
    if all(t.non_increasing for t in trends):
        return Trend.DECREASING_ON_TAIL
    if all(t.non_decreasing for t in trends):
        return Trend.INCREASING_ON_TAIL
    return Trend.NOT_CERTIFIED


def _add_limits(xs):
    infs = [x for x in xs if isinstance(x, Infinite)]
    if infs:
        if len({x.sign for x in infs}) > 1:
            raise ValueError("indeterminate limit (oo - oo)")
        return infs[0]
    total = Fraction(0)
    for x in xs:
        total = total + x
    return to_fraction(total)


class Coeff:
    """Base class; see the module docstring for the concrete node types."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, -_lift(other))

    def __rsub__(self, other):
        return add(_lift(other), -self)

    def __mul__(self, other):
        return mul(self, _lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if not isinstance(other, Lin):
            raise TypeError("division by a max(...) expression is not linear")
        return mul(self, other.inverse())

    def __neg__(self):
        return mul(self, Lin(ParamCoeff.const(-1)))

    @property
    def depends_on_M(self) -> bool:
        raise NotImplementedError

    def is_zero(self) -> bool:
        return False


class Lin(Coeff):
    __slots__ = ("p", "q")

    def __init__(self, p: ParamCoeff, q: ParamCoeff = _ZERO):
        self.p = p
        self.q = q

    @property
    def depends_on_M(self) -> bool:
        return not (self.p.is_constant and self.q.is_constant)

    @property
    def is_constant(self) -> bool:
        return not self.depends_on_M

    def constant_value(self):
        return to_fraction(QuadExt(self.p.constant_value(), self.q.constant_value()))

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero()

    def inverse(self) -> Lin:
        if self.is_zero():
            raise ZeroDivisionError("division by a zero coefficient")
        if self.q.is_zero():
            return Lin(1 / self.p)
        norm = self.p * self.p - 2 * self.q * self.q
        return Lin(self.p / norm, -self.q / norm)

    def eval_at(self, M):
        a = self.p.eval_at(M)
        if self.q.is_zero():
            return a
        return to_fraction(QuadExt(a, self.q.eval_at(M)))

    def limit(self):
        a = self.p.limit_at_infinity()
        if self.q.is_zero():
            return a
        b = self.q.limit_at_infinity()
        if isinstance(a, Infinite) or isinstance(b, Infinite):
            if not isinstance(b, Infinite):
                return a
            if not isinstance(a, Infinite) or a.sign == b.sign:
                return b
            raise ValueError("indeterminate limit in Q(sqrt2)")
        return to_fraction(QuadExt(a, b))

    def trend(self, M0: int) -> Trend:
        tp = self.p.certify_monotone(M0)
        if self.q.is_zero():
            return tp
        return _combine_trends([tp, self.q.certify_monotone(M0)])

    def constant_sign(self) -> int | None:
        if self.depends_on_M:
            return None
        return sign(self.constant_value())

    def __eq__(self, other):
        return isinstance(other, Lin) and self.p == other.p and self.q == other.q

    def __hash__(self):
        return hash(("lin", self.p, self.q))

    def __repr__(self):
        return f"Lin({self})"

    def __str__(self):
        if self.is_constant:
            return format_scalar(self.constant_value())
        if self.q.is_zero():
            return str(self.p)
        return f"({self.p}) + ({self.q})*sqrt2"


class Max(Coeff):
    __slots__ = ("args",)

    def __init__(self, args):
        self.args = tuple(_lift(a) for a in args)
        if len(self.args) < 2:
            raise ValueError("max needs at least two arguments")

    @property
    def depends_on_M(self) -> bool:
        return any(a.depends_on_M for a in self.args)

    def eval_at(self, M):
        return scalar_max(*(a.eval_at(M) for a in self.args))

    def limit(self):
        lims = [a.limit() for a in self.args]
        if any(isinstance(x, Infinite) and x.sign > 0 for x in lims):
            return Infinite(1)
        finite = [x for x in lims if not isinstance(x, Infinite)]
        return scalar_max(*finite) if finite else Infinite(-1)

    def trend(self, M0: int) -> Trend:
        return _combine_trends(a.trend(M0) for a in self.args)

    def __eq__(self, other):
        return isinstance(other, Max) and self.args == other.args

    def __hash__(self):
        return hash(("max", self.args))

    def __repr__(self):
        return f"Max({self})"

    def __str__(self):
        return "max(" + ", ".join(str(a) for a in self.args) + ")"


class Scaled(Coeff):
    __slots__ = ("k", "base")

    def __init__(self, k: Lin, base: Coeff):
        self.k = k
        self.base = base

    @property
    def depends_on_M(self) -> bool:
        return self.k.depends_on_M or self.base.depends_on_M

    def eval_at(self, M):
        return to_fraction(self.k.eval_at(M) * self.base.eval_at(M))

    def limit(self):
        k, b = self.k.limit(), self.base.limit()
        if isinstance(k, Infinite) or isinstance(b, Infinite):
            sk = k.sign if isinstance(k, Infinite) else sign(k)
            sb = b.sign if isinstance(b, Infinite) else sign(b)
            if sk * sb == 0:
                raise ValueError("indeterminate limit (0 * oo)")
            return Infinite(sk * sb)
        return to_fraction(k * b)

    def trend(self, M0: int) -> Trend:
        s = self.k.constant_sign()
        if s is None:
            return Trend.NOT_CERTIFIED
        t = self.base.trend(M0)
        return t if s > 0 else t.flipped()

    def __eq__(self, other):
        return isinstance(other, Scaled) and self.k == other.k and self.base == other.base

    def __hash__(self):
        return hash(("scaled", self.k, self.base))

    def __repr__(self):
        return f"Scaled({self})"

    def __str__(self):
        if self.k == Lin(ParamCoeff.const(-1)):
            return f"-{self.base}"
        k = str(self.k)
        if self.k.depends_on_M or " " in k:
            k = f"({k})"
        return f"{k}*{self.base}"


class Sum(Coeff):
    __slots__ = ("const", "terms")

    def __init__(self, const: Lin, terms):
        self.const = const
        self.terms = tuple(terms)

    @property
    def depends_on_M(self) -> bool:
        return self.const.depends_on_M or any(t.depends_on_M for t in self.terms)

    def eval_at(self, M):
        total = self.const.eval_at(M)
        for t in self.terms:
            total = total + t.eval_at(M)
        return to_fraction(total)

    def limit(self):
        return _add_limits([self.const.limit()] + [t.limit() for t in self.terms])

    def trend(self, M0: int) -> Trend:
        return _combine_trends([self.const.trend(M0)] + [t.trend(M0) for t in self.terms])

    def __eq__(self, other):
        return isinstance(other, Sum) and self.const == other.const and self.terms == other.terms

    def __hash__(self):
        return hash(("sum", self.const, self.terms))

    def __str__(self):
        parts = [str(t) for t in self.terms]
        if not self.const.is_zero():
            parts.insert(0, str(self.const))
        return "(" + " + ".join(parts) + ")"


# -- normalising constructors ---------------------------------------------


def _split(c: Coeff):
    """Return (lin part, tuple of non-lin terms)."""
    if isinstance(c, Lin):
        return c, ()
    if isinstance(c, Sum):
        return c.const, c.terms
    return Lin(_ZERO), (c,)


def add(x: Coeff, y: Coeff) -> Coeff:
    if isinstance(x, Lin) and isinstance(y, Lin):
        return Lin(x.p + y.p, x.q + y.q)
    cx, tx = _split(x)
    cy, ty = _split(y)
    const = Lin(cx.p + cy.p, cx.q + cy.q)
    terms = tx + ty
    return Sum(const, terms) if terms else const


def mul(x: Coeff, y: Coeff) -> Coeff:
    if isinstance(x, Lin) and isinstance(y, Lin):
        return Lin(x.p * y.p + 2 * x.q * y.q, x.p * y.q + x.q * y.p)
    if isinstance(y, Lin):
        x, y = y, x
    if not isinstance(x, Lin):
        raise TypeError("product of two max(...) expressions is not supported")
    if x.is_zero():
        return Lin(_ZERO)
    if x == Lin(ParamCoeff.const(1)):
        return y
    if isinstance(y, Scaled):
        return mul(mul(x, y.k), y.base)
    if isinstance(y, Sum):
        out = mul(x, y.const)
        for t in y.terms:
            out = add(out, mul(x, t))
        return out
    return Scaled(x, y)


def const(value) -> Lin:
    return _lift(value)


def param() -> Lin:
    return Lin(ParamCoeff.param())
