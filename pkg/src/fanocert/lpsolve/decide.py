"""Exact feasibility decisions, threshold scans and tail certification."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from ..arith import QuadExt, to_fraction
from ..coeff import Coeff
from ..errors import DomainError, EmptyRange
from ..rfunc import Trend
from ..sysmodel.model import (
    LinearSystem,
    ParametricSystem,
    instantiate,
    limit_system,
    relax_strict,
)
from . import simplex
from .certificate import FarkasCertificate, verify_certificate

_ZERO = mpq(0)
_ONE = mpq(1)


def _field(x):
    if isinstance(x, QuadExt):
        b = mpq(x.b.numerator, x.b.denominator)
        a = mpq(x.a.numerator, x.a.denominator)
        return a if b == 0 else QuadExt._raw(a, b)
    return mpq(x.numerator, x.denominator)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    point: dict | None = None
    cert: FarkasCertificate | None = None

    @property
    def status(self) -> str:
        return "Feasible" if self.feasible else "Infeasible"


def decide(s: LinearSystem) -> FeasibilityResult:
    """Exact decision for a numeric system.

    Strict rows are honoured: the problem ``max t`` with ``a.x + t <= b`` on
    strict rows and ``0 <= t <= 1`` is solved, and ``t* > 0`` gives a point
    satisfying every strict row.  When ``t* = 0`` the optimal dual is a
    combination with zero left side, zero right side and positive weight on
    a strict row.  Pass ``relax_strict(s)`` for the closed-set question.
    """
    names = s.variable_names
    cols: dict[str, tuple[int, int | None]] = {}
    n = 0
    for v in s.variables:
        if v.nonneg:
            cols[v.name] = (n, None)
            n += 1
        else:
            cols[v.name] = (n, n + 1)
            n += 2
    t_col = n if s.has_strict else None
    ncols = n + (1 if s.has_strict else 0)

    rows = []
    orient = []
    for c in s.constraints:
        o = c.relation.orientation
        w = 1 if o == 0 else o
        coeffs = {}
        for v, a in c.coeffs.items():
            a = _field(a) * w
            pos, neg = cols[v]
            coeffs[pos] = a
            if neg is not None:
                coeffs[neg] = -a
        if c.relation.strict:
            coeffs[t_col] = _ONE
        rows.append((coeffs, simplex.EQ if o == 0 else simplex.LE, _field(c.rhs) * w))
        orient.append(w)
    objective = None
    if t_col is not None:
        rows.append(({t_col: _ONE}, simplex.LE, _ONE))
        objective = {t_col: _ONE}

    res = simplex.solve(rows, ncols, objective, _ZERO, _ONE)
    if res.status == "infeasible" or (res.status == "optimal" and res.value <= 0):
        u = res.duals[: len(s.constraints)]
        mult = {}
        for c, y in zip(s.constraints, u):
            if y != 0:
                mult[c.cid] = to_fraction(y)
        nonneg = {}
        for v in s.variables:
            if not v.nonneg:
                continue
            g = _ZERO
            pos = cols[v.name][0]
            for (coeffs, _, _), y in zip(rows, u):
                a = coeffs.get(pos)
                if a is not None and y != 0:
                    g = g + y * a
            if g != 0:
                nonneg[v.name] = to_fraction(g)
        cert = FarkasCertificate(mult, nonneg, s.name, s.M)
        if not verify_certificate(s, cert):
            raise AssertionError(f"internal error: unverified certificate for {s.name} at M={s.M}")
        return FeasibilityResult(False, cert=cert)

    x = res.x
    point = {}
    for v in names:
        pos, neg = cols[v]
        val = x[pos] if neg is None else x[pos] - x[neg]
        point[v] = to_fraction(val)
    if not s.satisfied_by(point):
        raise AssertionError(f"internal error: point violates {s.name} at M={s.M}")
    return FeasibilityResult(True, point=point)


# -- scans over M --------------------------------------------------------------


@dataclass(frozen=True)
class TailResult:
    certified: bool
    method: str  # "limit+monotone" or "finite-scan-only"
    reason: str = ""
    row: str | None = None


def _minimal_from(statuses: dict, hi: int) -> int | None:
    """Least M with every scanned M' >= M infeasible."""
    best = None
    for M in range(hi, min(statuses) - 1, -1):
        if statuses[M]:
            break
        best = M
    return best


@dataclass
class ThresholdReport:
    system: str
    M_lo: int
    M_hi: int
    feasible: dict  # M -> bool, relaxed system
    feasible_strict: dict  # M -> bool, strict inequalities honoured
    minimal_infeasible_M: int | None
    minimal_infeasible_M_strict: int | None
    tail: TailResult
    certificates: dict = field(default_factory=dict)  # M -> cert (relaxed)

    @property
    def tail_certified(self) -> bool:
        return self.tail.certified

    @property
    def tail_method(self) -> str:
        return self.tail.method

    def infeasible_on(self, lo: int, hi: int, strict: bool = False) -> bool:
        table = self.feasible_strict if strict else self.feasible
        return all(not table[M] for M in range(lo, hi + 1))


def scan_threshold(
    s: ParametricSystem, M_lo: int, M_hi: int, keep_certificates: bool = False
) -> ThresholdReport:
    if M_lo > M_hi:
        raise EmptyRange(f"empty scan range [{M_lo}, {M_hi}]")
    feas, feas_strict, certs = {}, {}, {}
    for M in range(M_lo, M_hi + 1):
        inst = instantiate(s, M)
        relaxed = decide(relax_strict(inst))
        feas[M] = relaxed.feasible
        if keep_certificates and not relaxed.feasible:
            certs[M] = relaxed.cert
        if not relaxed.feasible:
            feas_strict[M] = False
        elif inst.has_strict:
            feas_strict[M] = decide(inst).feasible
        else:
            feas_strict[M] = True
    lo = _minimal_from(feas, M_hi)
    lo_strict = _minimal_from(feas_strict, M_hi)
    if lo is not None and s.m_hi is None:
        tail = certify_tail(s, lo)
    else:
        tail = TailResult(False, "finite-scan-only", "no infeasible tail in the scanned range")
    return ThresholdReport(s.name, M_lo, M_hi, feas, feas_strict, lo, lo_strict, tail, certs)


def _row_trend_ok(k: Coeff, w: int, M0: int, want_nondecreasing: bool) -> bool:
    t = k.trend(M0)
    if w < 0:
        t = t.flipped()
    return t.non_decreasing if want_nondecreasing else t.non_increasing


def certify_tail(s: ParametricSystem, M0: int) -> TailResult:
    """Certify that the relaxed system is infeasible for every integer M >= M0.

    Two checks: the limit system is infeasible, and the feasible region
    shrinks as M grows.  For the second, every row is read as
    ``a(M).x <= b(M)``; each M-dependent ``a`` must sit on a nonnegative
    variable and be non-decreasing, each M-dependent ``b`` non-increasing,
    so the region at M is contained in the (empty) region at M0.
    """
    no = "finite-scan-only"
    try:
        at_m0 = decide(relax_strict(instantiate(s, M0)))
    except DomainError as exc:
        return TailResult(False, no, f"cannot instantiate at M0: {exc}")
    if at_m0.feasible:
        return TailResult(False, no, f"relaxed system is feasible at M={M0}")
    try:
        lim = decide(relax_strict(limit_system(s)))
    except (DomainError, ValueError) as exc:
        return TailResult(False, no, f"limit system: {exc}")
    if lim.feasible:
        return TailResult(False, no, "limit system is feasible")
    nonneg = {v.name for v in s.variables if v.nonneg}
    for c in s.constraints:
        w = c.relation.orientation
        try:
            for v, k in c.coeffs:
                if not k.depends_on_M:
                    continue
                if w == 0:
                    return TailResult(False, no, "dominance: M-dependent equality", c.cid)
                if v not in nonneg:
                    return TailResult(False, no, f"dominance: M-dependent coefficient on free {v}", c.cid)
                if not _row_trend_ok(k, w, M0, want_nondecreasing=True):
                    return TailResult(False, no, f"dominance: coefficient of {v} not monotone the right way", c.cid)
            if c.rhs.depends_on_M:
                if w == 0:
                    return TailResult(False, no, "dominance: M-dependent equality", c.cid)
                if not _row_trend_ok(c.rhs, w, M0, want_nondecreasing=False):
                    return TailResult(False, no, "dominance: right side not monotone the right way", c.cid)
        except DomainError as exc:
            return TailResult(False, no, f"dominance: {exc}", c.cid)
    return TailResult(True, "limit+monotone")
