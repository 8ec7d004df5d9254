"""Exact minimisation of ``g(nu) + theta^2/(theta - 1)`` on a polygon.

Two objectives are supported: ``PlainNF`` with ``g = nu^2`` and
``ClampedNF`` with ``g = max(nu^2, 8)``.  Both are convex on ``theta > 1``
and blow up as ``theta -> 1+`` since ``theta^2/(theta-1) >= 4`` with
equality only at ``theta = 2``, hence the minimum over the region (with the
open edge ``theta > 1``) exists whenever the closure is bounded.

The region is split into pieces on which ``g`` is smooth (for ``ClampedNF``
along ``nu = +-2*sqrt2``).  On each piece the candidates are the vertices,
critical points along edges and interior critical points, all computed in
Q(sqrt2).  The best candidate is then checked twice: exact KKT conditions
with the subdifferential of ``g``, and an interval branch-and-bound that
rules out any point below ``min - 1e-9``.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import _kernels
from ..arith import QuadExt, format_scalar, parse_scalar, sign, to_fraction
from ..errors import DomainError, EmptyRegion, UnknownSystem
from ..lpsolve import simplex
from ..sysmodel.catalog import data_dir

BNB_TOLERANCE = 1e-9
_SQRT2 = QuadExt(0, 1)
_CLAMP = 8


class Objective(enum.Enum):
    PLAIN_NF = "PlainNF"
    CLAMPED_NF = "ClampedNF"


@dataclass(frozen=True)
class HalfPlane:
    """``a*nu + c*theta <= b``; entries exact, in Q or Q(sqrt2)."""

    a: object
    c: object
    b: object
    label: str = ""

    def slack(self, nu, theta):
        return to_fraction(self.b - self.a * nu - self.c * theta)

    def __str__(self):
        return self.label or f"{format_scalar(self.a)}*nu + {format_scalar(self.c)}*theta <= {format_scalar(self.b)}"


@dataclass(frozen=True)
class TriangleRegion:
    """Polygon ``{theta > 1} & constraints`` in the (nu, theta) plane."""

    constraints: tuple
    name: str = ""

    @classmethod
    def parse(cls, text: str, name: str = "") -> TriangleRegion:
        """Rows like ``nu <= 3; 5*theta <= 2*nu`` (``theta > 1`` is implied)."""
        from ..sysmodel.dsl import parse_system

        parts = [part.strip() for part in text.split(";") if part.strip()]
        s = parse_system("var nu;\nvar theta;\n" + "\n".join(p + ";" for p in parts), name or "region")
        rows = []
        for c, label in zip(s.constraints, parts):
            coeffs = dict(c.coeffs)
            a = coeffs["nu"].eval_at(0) if "nu" in coeffs else Fraction(0)
            t = coeffs["theta"].eval_at(0) if "theta" in coeffs else Fraction(0)
            b = c.rhs.eval_at(0)
            o = c.relation.orientation
            if c.relation.strict and not (o < 0 and a == 0 and t == 1 and b == 1):
                raise ValueError(f"strict rows other than theta > 1 are not supported: {label}")
            if o == 0:
                rows.append(HalfPlane(a, t, b, label))
                rows.append(HalfPlane(-a, -t, -b, label))
            elif o > 0:
                rows.append(HalfPlane(a, t, b, label))
            else:
                rows.append(HalfPlane(-a, -t, -b, label))
        return cls(tuple(rows), name)

    def contains(self, nu, theta) -> bool:
        """Membership in the closure intersected with ``theta > 1``."""
        return sign(theta - 1) > 0 and all(sign(h.slack(nu, theta)) >= 0 for h in self.constraints)

    def __str__(self):
        rows = [str(h) for h in self.constraints]
        return "; ".join(rows if "theta > 1" in rows else ["theta > 1"] + rows)


@dataclass(frozen=True)
class RegionEntry:
    region: TriangleRegion
    objective: Objective
    expected_value: object
    expected_argmin: tuple
    meta: dict


_EXPECT = re.compile(r"^(.+?)\s+at\s+\((.+),(.+)\)$")


def region_names() -> list[str]:
    return sorted(p.stem for p in (data_dir() / "regions").glob("*.region"))


def load_region(name: str) -> RegionEntry:
    path = data_dir() / "regions" / f"{name}.region"
    if not path.is_file():
        raise UnknownSystem(name)
    meta, rows = {}, []
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if line.startswith("#@"):
            key, _, value = line[2:].partition(":")
            meta[key.strip()] = value.strip()
        elif line and not line.startswith("#"):
            rows.append(line.partition("#")[0].strip().rstrip(";"))
    region = TriangleRegion.parse("; ".join(rows), meta.get("name", name))
    m = _EXPECT.match(meta.get("expect", ""))
    value = argmin = None
    if m:
        value = parse_scalar(m.group(1))
        argmin = (parse_scalar(m.group(2)), parse_scalar(m.group(3)))
    return RegionEntry(region, Objective(meta.get("objective", "PlainNF")), value, argmin, meta)


def objective_value(obj: Objective, nu, theta, n=1):
    """Un-normalised objective ``g(nu) + n*theta^2/(theta - n)``, exact."""
    obj = Objective(obj) if isinstance(obj, str) else obj
    nu, theta, n = (x if isinstance(x, QuadExt) else Fraction(x) for x in (nu, theta, n))
    if sign(theta - n) <= 0:
        raise DomainError("objective needs theta > n")
    g = nu * nu
    if obj is Objective.CLAMPED_NF:
        cap = _CLAMP * n * n
        if sign(g - cap) < 0:
            g = cap
    return to_fraction(g + n * theta * theta / (theta - n))


def _h_prime_numerator(theta):
    # d/dtheta theta^2/(theta-1) = theta*(theta-2)/(theta-1)^2
    return theta * (theta - 2)


# -- polygon geometry over Q(sqrt2) --------------------------------------------


def _intersect(h1: HalfPlane, h2: HalfPlane):
    det = h1.a * h2.c - h1.c * h2.a
    if det == 0:
        return None
    nu = (h1.b * h2.c - h1.c * h2.b) / det
    th = (h1.a * h2.b - h1.b * h2.a) / det
    return to_fraction(nu), to_fraction(th)


def _closure(rows):
    return list(rows) + [HalfPlane(Fraction(0), Fraction(-1), Fraction(-1), "theta >= 1")]


def _vertices(rows):
    rows = _closure(rows)
    pts = []
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            p = _intersect(rows[i], rows[j])
            if p is None:
                continue
            if all(sign(h.slack(*p)) >= 0 for h in rows) and p not in pts:
                pts.append(p)
    return pts


def _is_bounded(rows) -> bool:
    rows = _closure(rows)
    dirs = []
    for h in rows:
        dirs.append((-h.c, h.a))
        dirs.append((h.c, -h.a))
    for d in dirs:
        if d == (0, 0):
            continue
        if all(sign(h.a * d[0] + h.c * d[1]) <= 0 for h in rows):
            return False
    return True


def _edges(rows, verts):
    """Segments (P, Q) of the boundary, one per supporting line."""
    out = []
    for h in _closure(rows):
        on = [p for p in verts if sign(h.slack(*p)) == 0]
        if len(on) < 2:
            continue
        key = (lambda p: p[1]) if h.a != 0 else (lambda p: p[0])
        on.sort(key=lambda p: float(key(p)))
        out.append((h, on[0], on[-1]))
    return out


# -- roots of polynomials with Q(sqrt2) coefficients ----------------------------


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return to_fraction(acc)


def _split(x):
    if isinstance(x, QuadExt):
        return Fraction(x.a), Fraction(x.b)
    return Fraction(x), Fraction(0)


def _real_roots(coeffs_float):
    c = list(coeffs_float)
    while c and c[-1] == 0:
        c.pop()
    if len(c) <= 1:
        return []
    r = np.roots(c[::-1])
    return [z.real for z in r if abs(z.imag) < 1e-7]


def _roots_in_qsqrt2(coeffs, lo, hi):
    """Exact roots in Q(sqrt2) strictly between ``lo`` and ``hi``.

    Returns ``(roots, complete)``; ``complete`` is False when a numeric
    root in the interval could not be matched by an exact one.
    """
    parts = [_split(c) for c in coeffs]
    fp = [float(a) + math.sqrt(2) * float(b) for a, b in parts]
    fc = [float(a) - math.sqrt(2) * float(b) for a, b in parts]
    r1s, r2s = _real_roots(fp), _real_roots(fc)
    found = []
    for r1 in r1s:
        for r2 in r2s:
            a = Fraction((r1 + r2) / 2).limit_denominator(10**6)
            b = Fraction((r1 - r2) / (2 * math.sqrt(2))).limit_denominator(10**6)
            x = to_fraction(QuadExt(a, b)) if b else a
            if _poly_eval(coeffs, x) == 0 and x not in found:
                found.append(x)
    inside = [x for x in found if sign(x - lo) > 0 and sign(hi - x) > 0]
    flo, fhi = float(lo), float(hi)
    numeric_inside = [r for r in r1s if flo + 1e-12 < r < fhi - 1e-12]
    complete = len(numeric_inside) <= len(inside)
    return inside, complete


# -- candidates ----------------------------------------------------------------


def _pieces(obj: Objective, region: TriangleRegion):
    """(rows, g-kind) pairs; g-kind is 'square' or 'flat'."""
    base = list(region.constraints)
    if obj is Objective.PLAIN_NF:
        return [(base, "square")]
    r = 2 * _SQRT2
    return [
        (base + [HalfPlane(Fraction(1), Fraction(0), r), HalfPlane(Fraction(-1), Fraction(0), r)], "flat"),
        (base + [HalfPlane(Fraction(-1), Fraction(0), -r)], "square"),
        (base + [HalfPlane(Fraction(1), Fraction(0), -r)], "square"),
    ]


def _edge_candidates(h: HalfPlane, P, Q, kind):
    out = []
    complete = True
    if h.a == 0:
        # theta fixed along the edge
        if kind == "square" and sign(P[0]) * sign(Q[0]) < 0:
            out.append((Fraction(0), P[1]))
        return out, complete
    lo, hi = (P[1], Q[1]) if sign(Q[1] - P[1]) >= 0 else (Q[1], P[1])
    if h.c == 0 or kind == "flat":
        # nu fixed, or g flat: h'(theta) = 0 at theta = 2
        if sign(2 - lo) > 0 and sign(hi - 2) > 0:
            th = Fraction(2)
            out.append((to_fraction((h.b - h.c * th) / h.a), th))
        return out, complete
    # nu = p + k*theta; 2*nu*k*(theta-1)^2 + theta^2 - 2*theta = 0
    p = to_fraction(h.b / h.a)
    k = to_fraction(-h.c / h.a)
    # 2k*(p + k t)(t^2 - 2t + 1) + t^2 - 2t, ascending powers
    c0 = 2 * k * p
    c1 = 2 * k * (-2 * p + k)
    c2 = 2 * k * (p - 2 * k) + 1
    c3 = 2 * k * k
    c1 = c1 - 2
    coeffs = [to_fraction(c) for c in (c0, c1, c2, c3)]
    roots, complete = _roots_in_qsqrt2(coeffs, lo, hi)
    for th in roots:
        out.append((to_fraction(p + k * th), th))
    return out, complete


def _candidates(obj: Objective, region: TriangleRegion):
    cands = []
    complete = True
    for rows, kind in _pieces(obj, region):
        verts = _vertices(rows)
        if not verts:
            continue
        cands.extend(verts)
        for h, P, Q in _edges(rows, verts):
            more, ok = _edge_candidates(h, P, Q, kind)
            cands.extend(more)
            complete = complete and ok
        if kind == "square":
            interior = (Fraction(0), Fraction(2))
            if all(sign(hh.slack(*interior)) > 0 for hh in rows):
                cands.append(interior)
    return [p for p in cands if region.contains(*p)], complete


# -- KKT -----------------------------------------------------------------------


def _subgradient_range(obj: Objective, nu):
    """Interval of d g / d nu at ``nu``."""
    g2 = 2 * nu
    if obj is Objective.PLAIN_NF:
        return g2, g2
    s = sign(nu * nu - _CLAMP)
    if s > 0:
        return g2, g2
    if s < 0:
        return Fraction(0), Fraction(0)
    return (Fraction(0), g2) if sign(nu) > 0 else (g2, Fraction(0))


def kkt_multipliers(obj: Objective, region: TriangleRegion, nu, theta):
    """Multipliers for the active rows proving optimality, or None.

    Solves ``sigma + sum l_i a_i = 0``, ``h'(theta) + sum l_i c_i = 0`` with
    ``l >= 0`` and ``sigma`` in the subdifferential of ``g`` at ``nu``.
    By convexity, a solution certifies a global minimum.
    """
    active = [h for h in region.constraints if sign(h.slack(nu, theta)) == 0]
    lo, hi = _subgradient_range(obj, nu)
    hp = to_fraction(_h_prime_numerator(theta) / ((theta - 1) * (theta - 1)))
    n = len(active)
    # columns: l_0..l_{n-1}, s (sigma = lo + s)
    row_nu = {i: h.a for i, h in enumerate(active)}
    row_nu[n] = Fraction(1)
    row_th = {i: h.c for i, h in enumerate(active)}
    rows = [
        ({j: v for j, v in row_nu.items() if v != 0}, simplex.EQ, to_fraction(-lo)),
        ({j: v for j, v in row_th.items() if v != 0}, simplex.EQ, to_fraction(-hp)),
        ({n: Fraction(1)}, simplex.LE, to_fraction(hi - lo)),
    ]
    res = simplex.solve(rows, n + 1, None, Fraction(0), Fraction(1))
    if res.status != "feasible":
        return None
    return {str(h): to_fraction(res.x[i]) for i, h in enumerate(active)}


# -- interval branch and bound -----------------------------------------------


def _integer_rows(region: TriangleRegion):
    """Constraint data scaled to exact float integers (rational rows only)."""
    A, C, B = [], [], []
    for h in region.constraints:
        vals = [to_fraction(x) for x in (h.a, h.c, h.b)]
        if any(isinstance(v, QuadExt) for v in vals):
            continue  # dropping a row only enlarges the searched set
        den = math.lcm(*(v.denominator for v in vals))
        a, c, b = (int(v * den) for v in vals)
        if max(abs(a), abs(c), abs(b)) >= 2**53:
            continue
        A.append(float(a))
        C.append(float(c))
        B.append(float(b))
    return np.array(A), np.array(C), np.array(B)


@dataclass(frozen=True)
class BnBResult:
    lower: float  # proven lower bound on the region
    boxes: int
    complete: bool


def interval_lower_bound(obj: Objective, region: TriangleRegion, target: float,
                         max_boxes: int = 2_000_000, use_numba=None) -> BnBResult:
    """Prove ``f >= target`` on the region by bisection, or fail.

    Boxes whose rounded lower bound reaches ``target`` are retired; the
    reported bound is the minimum over retired feasible boxes.
    """
    verts = _vertices(region.constraints)
    nus = [float(p[0]) for p in verts]
    ths = [float(p[1]) for p in verts]
    pad = 1e-12
    nu_lo = np.array([min(nus) - pad - abs(min(nus)) * 1e-15])
    nu_hi = np.array([max(nus) + pad + abs(max(nus)) * 1e-15])
    th_lo = np.array([max(1.0, min(ths) - pad)])
    th_hi = np.array([max(ths) + pad + abs(max(ths)) * 1e-15])
    A, C, B = _integer_rows(region)
    clamp = float(_CLAMP) if obj is Objective.CLAMPED_NF else 0.0
    lower = math.inf
    total = 0
    while nu_lo.size:
        total += nu_lo.size
        if total > max_boxes:
            return BnBResult(lower, total, False)
        lb, feas = _kernels.box_bounds(nu_lo, nu_hi, th_lo, th_hi, clamp, A, C, B, use_numba)
        done = feas & (lb >= target)
        if done.any():
            lower = min(lower, float(lb[done].min()))
        keep = feas & ~done
        if not keep.any():
            break
        nu_lo, nu_hi, th_lo, th_hi = nu_lo[keep], nu_hi[keep], th_lo[keep], th_hi[keep]
        wide = (nu_hi - nu_lo) >= (th_hi - th_lo)
        if np.any(np.maximum(nu_hi - nu_lo, th_hi - th_lo) < 1e-15):
            return BnBResult(lower, total, False)
        nu_mid = 0.5 * (nu_lo + nu_hi)
        th_mid = 0.5 * (th_lo + th_hi)
        nu_lo = np.concatenate([nu_lo, np.where(wide, nu_mid, nu_lo)])
        nu_hi = np.concatenate([np.where(wide, nu_mid, nu_hi), nu_hi])
        th_lo = np.concatenate([th_lo, np.where(wide, th_lo, th_mid)])
        th_hi = np.concatenate([np.where(wide, th_hi, th_mid), th_hi])
    return BnBResult(lower, total, True)


# -- driver --------------------------------------------------------------------


@dataclass(frozen=True)
class TriangleMinimum:
    objective: Objective
    region: str
    value: object  # exact, Fraction or QuadExt
    argmin: tuple
    verified: bool
    kkt: dict | None
    witness: tuple  # (proven lower bound, upper bound) as floats
    candidates: int
    complete: bool
    notes: list = field(default_factory=list)

    def format(self) -> str:
        nu, th = self.argmin
        lines = [
            f"objective {self.objective.value} on {self.region}",
            f"  min   = {format_scalar(self.value)}",
            f"  at    = ({format_scalar(nu)}, {format_scalar(th)})",
            f"  kkt   = " + (", ".join(f"[{k}] {format_scalar(v)}" for k, v in self.kkt.items()) if self.kkt is not None else "failed"),
            f"  witness = [{self.witness[0]!r}, {self.witness[1]!r}]",
            f"  verified = {str(self.verified).lower()}",
        ]
        return "\n".join(lines) + "\n"


def _float_upper(x) -> float:
    v = float(x)
    return math.nextafter(math.nextafter(v, math.inf), math.inf)


def min_on_triangle(obj: Objective | str, region: TriangleRegion, use_numba=None) -> TriangleMinimum:
    obj = Objective(obj) if isinstance(obj, str) else obj
    if not _is_bounded(region.constraints):
        raise DomainError("region closure is unbounded")
    cands, complete = _candidates(obj, region)
    if not cands:
        if not _vertices(region.constraints):
            raise EmptyRegion(str(region))
        raise EmptyRegion(f"{region}: closure meets theta > 1 in no candidate point")
    scored = [(objective_value(obj, nu, th), nu, th) for nu, th in cands]
    best = scored[0]
    for item in scored[1:]:
        if sign(item[0] - best[0]) < 0 or (
            item[0] == best[0] and (float(item[1]), float(item[2])) < (float(best[1]), float(best[2]))
        ):
            best = item
    value, nu, th = best
    kkt = kkt_multipliers(obj, region, nu, th)
    target = float(value) - BNB_TOLERANCE
    bnb = interval_lower_bound(obj, region, target, use_numba=use_numba)
    notes = []
    if not complete:
        notes.append("some edge critical point is outside Q(sqrt2)")
    if kkt is None:
        notes.append("KKT conditions fail at the best candidate")
    if not bnb.complete:
        notes.append("branch-and-bound did not close")
    verified = complete and kkt is not None and bnb.complete
    witness = (bnb.lower, _float_upper(value))
    return TriangleMinimum(obj, region.name or str(region), value, (nu, th), verified, kkt,
                           witness, len(cands), complete, notes)
