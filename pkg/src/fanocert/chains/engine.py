"""Products of mult/deg ratio factors along a chain of hypertangent cuts.

A chain is an initial ratio times a list of factors.  Factors are either
rational functions of M or telescoping ranges ``telescope(a..b)`` standing
for ``prod_{i=a}^{b} (i+1)/i = (b+1)/a``; range endpoints may depend on M.

File format, one statement per line (``#@`` pragmas as in system files)::

    domain M >= 6;
    initial 3/M;
    factor 3/2;
    factor telescope(4..M-1);
    bound 1;
    expect 9/8;
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ..coeff import Lin
from ..errors import DomainError, EmptyRange, NotTelescoping, SystemSyntaxError, UnknownChain
from ..rfunc import Infinite, ParamCoeff, Trend
from ..sysmodel.catalog import data_dir


@dataclass(frozen=True)
class Telescope:
    start: ParamCoeff
    stop: ParamCoeff  # inclusive

    def bounds_at(self, M: int) -> tuple[int, int]:
        a, b = self.start.eval_at(M), self.stop.eval_at(M)
        if a.denominator != 1 or b.denominator != 1:
            raise DomainError(f"telescope endpoints must be integers at M={M}")
        a, b = int(a), int(b)
        if a <= 0:
            raise DomainError(f"telescope starts at {a} <= 0")
        if b < a:
            raise EmptyRange(f"telescope({a}..{b}) is empty at M={M}")
        return a, b

    def value_at(self, M: int) -> Fraction:
        a, b = self.bounds_at(M)
        return Fraction(b + 1, a)

    def closed_form(self) -> ParamCoeff:
        return (self.stop + 1) / self.start

    def __str__(self):
        return f"telescope({self.start}..{self.stop})"


@dataclass(frozen=True)
class ChainSpec:
    name: str
    initial_ratio: ParamCoeff
    factors: tuple  # ParamCoeff or Telescope
    comparison_bound: Fraction = Fraction(1)
    m_lo: int = 1
    expected: ParamCoeff | None = None
    meta: dict | None = None

    def anchor(self) -> str:
        return (self.meta or {}).get("anchor", "")


def chain_value(c: ChainSpec, M: int) -> Fraction:
    if M < c.m_lo:
        raise DomainError(f"M={M} is below the domain of {c.name} (M >= {c.m_lo})")
    value = c.initial_ratio.eval_at(M)
    for f in c.factors:
        v = f.value_at(M) if isinstance(f, Telescope) else f.eval_at(M)
        if v <= 0:
            raise DomainError(f"factor {f} is not positive at M={M}")
        value *= v
    return value


def chain_closed_form(c: ChainSpec) -> ParamCoeff:
    """Symbolic product, cross-checked against ``chain_value`` at 5 points."""
    out = c.initial_ratio
    for f in c.factors:
        if isinstance(f, Telescope):
            for end in (f.start, f.stop):
                if end.den != (1,) or len(end.num) > 2:
                    raise NotTelescoping(f"{f}: endpoints must be integer affine in M")
            out = out * f.closed_form()
        elif isinstance(f, ParamCoeff):
            out = out * f
        else:
            raise NotTelescoping(str(f))
    for M in _sample_points(c):
        if out.eval_at(M) != chain_value(c, M):
            raise NotTelescoping(f"closed form disagrees with the product at M={M}")
    return out


def _sample_points(c: ChainSpec) -> list[int]:
    pts, M = [], c.m_lo
    while len(pts) < 5 and M < c.m_lo + 1000:
        try:
            chain_value(c, M)
            pts.append(M)
        except (EmptyRange, DomainError):
            pass
        M = M + 1 if len(pts) < 3 else M + 37
    return pts


@dataclass(frozen=True)
class ChainThreshold:
    chain: str
    bound: Fraction
    first_ge: int | None  # least M0 with value >= bound for every M >= M0
    first_gt: int | None  # same with value > bound
    tail_start: int | None  # from here the closed form is certified monotone
    trend: Trend
    limit: object


def _first_holding(f: ParamCoeff, bound: Fraction, lo: int, strict: bool, scan_limit: int):
    def ok(M):
        v = f.eval_at(M)
        return v > bound if strict else v >= bound

    T = lo
    while T < lo + scan_limit:
        try:
            trend = f.certify_monotone(T)
        except DomainError:
            trend = Trend.NOT_CERTIFIED
        if trend is not Trend.NOT_CERTIFIED:
            break
        T += 1
    else:
        return None, None, Trend.NOT_CERTIFIED
    lim = f.limit_at_infinity()
    if trend.non_decreasing:
        if isinstance(lim, Infinite):
            holds_eventually = lim.sign > 0
        else:
            holds_eventually = lim > bound or (not strict and lim == bound and trend is Trend.CONSTANT)
        if not holds_eventually:
            if not ok(T):
                return None, T, trend
        first = T
        while not ok(first):
            first += 1
            if first > T + scan_limit:
                return None, T, trend
    else:
        # non-increasing tail: holds everywhere on it iff it holds in the limit
        if isinstance(lim, Infinite):
            holds = lim.sign > 0
        else:
            holds = lim > bound or (not strict and lim == bound)
        if not holds:
            return None, T, trend
        first = T
    while first - 1 >= lo and ok(first - 1):
        first -= 1
    return first, T, trend


def threshold_M(c: ChainSpec, scan_limit: int = 10_000) -> ChainThreshold:
    f = chain_closed_form(c)
    ge, T, trend = _first_holding(f, c.comparison_bound, c.m_lo, False, scan_limit)
    gt, _, _ = _first_holding(f, c.comparison_bound, c.m_lo, True, scan_limit)
    return ChainThreshold(c.name, c.comparison_bound, ge, gt, T, trend, f.limit_at_infinity())


def codim_nonreg(N: int) -> Fraction:
    """Codimension of the non-regular locus for N polynomials."""
    if N < 1:
        raise DomainError("N must be at least 1")
    return Fraction(N * (N + 1), 2) + 2


# -- files ---------------------------------------------------------------------

_TELESCOPE = re.compile(r"^telescope\((.+)\.\.(.+)\)$")


def _param_expr(text: str, line: int) -> ParamCoeff:
    from ..sysmodel.dsl import _Parser, _tokenize

    toks = _tokenize(text, line, 0)
    parser = _Parser(toks, line, set())
    form = parser.expr()
    if parser.peek().kind != "end":
        parser.error(f"unexpected {parser.peek().text!r}")
    k = form.const
    if not isinstance(k, Lin) or not k.q.is_zero():
        raise SystemSyntaxError("chain factors must be rational functions of M", line, 1)
    return k.p


def parse_chain(text: str, name: str = "chain") -> ChainSpec:
    meta: dict = {}
    initial = None
    factors = []
    bound = Fraction(1)
    m_lo = 1
    expected = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#@"):
            key, _, value = stripped[2:].partition(":")
            meta[key.strip()] = value.strip()
            continue
        stmt = raw.partition("#")[0].strip()
        if not stmt:
            continue
        if not stmt.endswith(";"):
            raise SystemSyntaxError("missing ';'", lineno, len(stmt) + 1)
        key, _, rest = stmt[:-1].strip().partition(" ")
        rest = rest.strip()
        if key == "domain":
            m = re.match(r"^M\s*>=\s*(\d+)$", rest)
            if not m:
                raise SystemSyntaxError("expected 'domain M >= N'", lineno, 1)
            m_lo = int(m.group(1))
        elif key == "initial":
            initial = _param_expr(rest, lineno)
        elif key == "factor":
            m = _TELESCOPE.match(rest)
            if m:
                factors.append(Telescope(_param_expr(m.group(1), lineno), _param_expr(m.group(2), lineno)))
            else:
                factors.append(_param_expr(rest, lineno))
        elif key == "bound":
            bound = _param_expr(rest, lineno).constant_value()
        elif key == "expect":
            expected = _param_expr(rest, lineno)
        else:
            raise SystemSyntaxError(f"unknown statement {key!r}", lineno, 1)
    if initial is None:
        raise SystemSyntaxError("chain has no 'initial' line", 0, 0)
    return ChainSpec(meta.get("name", name), initial, tuple(factors), bound, m_lo, expected, meta)


def chain_path(name: str) -> Path:
    return data_dir() / "chains" / f"{name}.chain"


def chain_names() -> list[str]:
    return sorted(p.stem for p in (data_dir() / "chains").glob("*.chain"))


def load_chain(name: str) -> ChainSpec:
    path = chain_path(name)
    if not path.is_file():
        raise UnknownChain(name)
    return parse_chain(path.read_text(), name)
