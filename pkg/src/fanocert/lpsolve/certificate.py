"""Farkas certificates and their verifier.

The verifier only does exact arithmetic on the constraint rows; it shares
no code with the simplex.  A certificate lists a multiplier per constraint
id plus multipliers for the sign rows ``-x <= 0`` of nonnegative variables
(ids ``nonneg:<var>``).  Rows are read in ``<=`` orientation, so a ``>=``
row contributes ``-lhs <= -rhs``.  Equalities accept a signed multiplier.

The weighted sum must have an identically zero left side.  It is a
contradiction when its right side is negative, or zero while some strict
row carries a positive multiplier (``0 < 0``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..arith import format_scalar, parse_scalar, sign, to_fraction
from ..errors import UnknownConstraintId
from ..sysmodel.model import LinearSystem

NONNEG_PREFIX = "nonneg:"


@dataclass(frozen=True)
class FarkasCertificate:
    multipliers: dict  # constraint id -> exact scalar
    nonneg: dict = field(default_factory=dict)  # variable -> exact scalar
    system: str = ""
    M: object = None

    def all_multipliers(self) -> dict:
        out = dict(self.multipliers)
        for v, y in self.nonneg.items():
            out[NONNEG_PREFIX + v] = y
        return out

    def negated(self, cid: str) -> FarkasCertificate:
        """Copy with one multiplier sign-flipped (perturbation tests)."""
        if cid.startswith(NONNEG_PREFIX):
            v = cid[len(NONNEG_PREFIX):]
            nn = dict(self.nonneg)
            nn[v] = -nn[v]
            return FarkasCertificate(dict(self.multipliers), nn, self.system, self.M)
        mult = dict(self.multipliers)
        mult[cid] = -mult[cid]
        return FarkasCertificate(mult, dict(self.nonneg), self.system, self.M)


@dataclass(frozen=True)
class Combination:
    lhs: dict  # variable -> coefficient (zeros dropped)
    rhs: object
    strict: bool

    @property
    def is_contradiction(self) -> bool:
        if self.lhs:
            return False
        s = sign(self.rhs)
        return s < 0 or (s == 0 and self.strict)

    def __str__(self):
        terms = " + ".join(f"{format_scalar(a)}*{v}" for v, a in self.lhs.items()) or "0"
        return f"{terms} {'<' if self.strict else '<='} {format_scalar(self.rhs)}"


def combine(s: LinearSystem, cert: FarkasCertificate) -> Combination:
    """Exact weighted sum of the rows named by the certificate.

    Raises :class:`UnknownConstraintId` for ids that do not exist, and
    ``ValueError`` for a negative multiplier on an inequality row.
    """
    by_id = {c.cid: c for c in s.constraints}
    nonneg = {v.name for v in s.variables if v.nonneg}
    lhs: dict = {}
    rhs = Fraction(0)
    strict = False
    for cid, y in cert.multipliers.items():
        if cid not in by_id:
            raise UnknownConstraintId(cid)
        if y == 0:
            continue
        c = by_id[cid]
        orient = c.relation.orientation
        if orient == 0:
            w = y
        else:
            if sign(y) < 0:
                raise ValueError(f"negative multiplier on inequality {cid}")
            w = y if orient > 0 else -y
            strict = strict or c.relation.strict
        for v, a in c.coeffs.items():
            lhs[v] = lhs.get(v, 0) + w * a
        rhs = rhs + w * c.rhs
    for v, y in cert.nonneg.items():
        if v not in nonneg:
            raise UnknownConstraintId(NONNEG_PREFIX + v)
        if y == 0:
            continue
        if sign(y) < 0:
            raise ValueError(f"negative multiplier on sign row of {v}")
        lhs[v] = lhs.get(v, 0) - y
    lhs = {v: to_fraction(a) for v, a in lhs.items() if a != 0}
    return Combination(lhs, to_fraction(rhs), strict)


def verify_certificate(s: LinearSystem, cert: FarkasCertificate) -> bool:
    try:
        return combine(s, cert).is_contradiction
    except ValueError:
        return False


# -- text form ---------------------------------------------------------------


def format_certificate(s: LinearSystem, cert: FarkasCertificate) -> str:
    """Stable text block: one ``id: multiplier`` line each, then the sum."""
    order = [c.cid for c in s.constraints]
    lines = [f"certificate {s.name} M={s.M}"]
    for cid in order:
        y = cert.multipliers.get(cid, 0)
        if y != 0:
            lines.append(f"  {cid}: {format_scalar(y)}")
    for v in s.variable_names:
        y = cert.nonneg.get(v, 0)
        if y != 0:
            lines.append(f"  {NONNEG_PREFIX}{v}: {format_scalar(y)}")
    lines.append(f"  => {combine(s, cert)}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> FarkasCertificate:
    mult, nonneg = {}, {}
    system, M = "", None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("=>"):
            continue
        if line.startswith("certificate"):
            parts = line.split()
            system = parts[1] if len(parts) > 1 else ""
            if len(parts) > 2 and parts[2].startswith("M="):
                tag = parts[2][2:]
                M = int(tag) if tag.lstrip("-").isdigit() else tag
            continue
        key, _, value = line.partition(":") if not line.startswith(NONNEG_PREFIX) else (
            line[: line.index(":", len(NONNEG_PREFIX))],
            ":",
            line[line.index(":", len(NONNEG_PREFIX)) + 1:],
        )
        y = parse_scalar(value.strip())
        if key.startswith(NONNEG_PREFIX):
            nonneg[key[len(NONNEG_PREFIX):]] = y
        else:
            mult[key.strip()] = y
    return FarkasCertificate(mult, nonneg, system, M)


__all__ = [
    "FarkasCertificate",
    "Combination",
    "combine",
    "verify_certificate",
    "format_certificate",
    "parse_certificate",
]
