"""Parametric and numeric linear systems."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction

from ..arith import Scalar, format_scalar, sign, to_fraction
from ..coeff import Coeff, Lin
from ..errors import DomainError, UndeclaredVariable, ZeroRowConstraint
from ..rfunc import Infinite


class Relation(enum.Enum):
    EQ = "="
    LE = "<="
    GE = ">="
    LT = "<"
    GT = ">"

    @property
    def strict(self) -> bool:
        return self in (Relation.LT, Relation.GT)

    @property
    def orientation(self) -> int:
        """+1 if the row reads ``lhs <= rhs`` after relaxing, -1 for ``>=``."""
        if self in (Relation.LE, Relation.LT):
            return 1
        if self in (Relation.GE, Relation.GT):
            return -1
        return 0

    def relaxed(self) -> Relation:
        return {Relation.LT: Relation.LE, Relation.GT: Relation.GE}.get(self, self)

    def holds(self, lhs, rhs) -> bool:
        s = sign(lhs - rhs)
        return {
            Relation.EQ: s == 0,
            Relation.LE: s <= 0,
            Relation.GE: s >= 0,
            Relation.LT: s < 0,
            Relation.GT: s > 0,
        }[self]


@dataclass(frozen=True)
class Variable:
    name: str
    nonneg: bool = True


@dataclass(frozen=True)
class Constraint:
    cid: str
    coeffs: tuple  # ((var name, Coeff), ...) in declaration order
    relation: Relation
    rhs: Coeff
    note: str = ""

    def coeff_map(self) -> dict:
        return dict(self.coeffs)


@dataclass(frozen=True)
class ParametricSystem:
    name: str
    variables: tuple
    constraints: tuple
    m_lo: int | None = None
    m_hi: int | None = None  # None means the tail [m_lo, oo)
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        names = {v.name for v in self.variables}
        for c in self.constraints:
            if not c.coeffs:
                raise ZeroRowConstraint(f"constraint {c.cid} has no variable term")
            for v, _ in c.coeffs:
                if v not in names:
                    raise UndeclaredVariable(v)

    @property
    def variable_names(self) -> list[str]:
        return [v.name for v in self.variables]

    def depends_on_M(self) -> bool:
        return any(
            c.rhs.depends_on_M or any(k.depends_on_M for _, k in c.coeffs)
            for c in self.constraints
        )

    def in_domain(self, M: int) -> bool:
        if self.m_lo is not None and M < self.m_lo:
            return False
        if self.m_hi is not None and M > self.m_hi:
            return False
        return True


@dataclass(frozen=True)
class LinearConstraint:
    cid: str
    coeffs: dict  # var name -> exact scalar, zeros dropped
    relation: Relation
    rhs: Scalar
    note: str = ""

    def lhs_value(self, point: dict):
        total = Fraction(0)
        for v, a in self.coeffs.items():
            total = total + a * point.get(v, 0)
        return to_fraction(total)

    def satisfied_by(self, point: dict) -> bool:
        return self.relation.holds(self.lhs_value(point), self.rhs)

    def __str__(self):
        terms = " + ".join(f"{format_scalar(a)}*{v}" for v, a in self.coeffs.items()) or "0"
        return f"{terms} {self.relation.value} {format_scalar(self.rhs)}"


@dataclass(frozen=True)
class LinearSystem:
    name: str
    variables: tuple
    constraints: tuple
    M: int | str | None = None  # the instantiated parameter, or "limit"

    @property
    def variable_names(self) -> list[str]:
        return [v.name for v in self.variables]

    @property
    def has_strict(self) -> bool:
        return any(c.relation.strict for c in self.constraints)

    @property
    def is_rational(self) -> bool:
        return all(
            isinstance(c.rhs, Fraction) and all(isinstance(a, Fraction) for a in c.coeffs.values())
            for c in self.constraints
        )

    def constraint(self, cid: str) -> LinearConstraint:
        for c in self.constraints:
            if c.cid == cid:
                return c
        raise KeyError(cid)

    def satisfied_by(self, point: dict) -> bool:
        for v in self.variables:
            if v.nonneg and sign(point.get(v.name, 0)) < 0:
                return False
        return all(c.satisfied_by(point) for c in self.constraints)


def _numeric(s: ParametricSystem, value_of, tag) -> LinearSystem:
    rows = []
    for c in s.constraints:
        coeffs = {}
        for v, k in c.coeffs:
            a = value_of(k)
            if a != 0:
                coeffs[v] = a
        rows.append(LinearConstraint(c.cid, coeffs, c.relation, value_of(c.rhs), c.note))
    return LinearSystem(s.name, s.variables, tuple(rows), tag)


def instantiate(s: ParametricSystem, M: int) -> LinearSystem:
    """Replace every coefficient by its exact value at the integer ``M``."""
    if not s.in_domain(M):
        raise DomainError(f"M={M} is outside the domain of {s.name}")
    return _numeric(s, lambda k: k.eval_at(M), M)


def limit_system(s: ParametricSystem) -> LinearSystem:
    """Coefficients replaced by their limits as M -> oo."""

    def lim(k: Coeff):
        x = k.limit()
        if isinstance(x, Infinite):
            raise DomainError(f"coefficient {k} diverges as M -> oo")
        return x

    return _numeric(s, lim, "limit")


def relax_strict(s: LinearSystem) -> LinearSystem:
    """Turn every ``<`` into ``<=`` and every ``>`` into ``>=``."""
    rows = tuple(replace(c, relation=c.relation.relaxed()) for c in s.constraints)
    return replace(s, constraints=rows)

