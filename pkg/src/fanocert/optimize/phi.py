"""Exact expansion checks for the quadratic forms behind the three- and
four-level counting arguments.

Both start from the estimate obtained by minimising the quadratic form on
the Noether-Fano hyperplane,

    (p1 + S0 + ... + Sk) (p1*m1 + (S0 + ... + S_{k-1})*m2)
        > (c*p1 + c*S0 + (c-1)*S1 + ... + 1*Sk)^2

with ``c`` the top discrepancy (3 or 4).  Substituting the boundary
multiplicities and moving everything to one side gives ``0 > Phi``; the
check confirms that ``Phi`` is visibly nonnegative.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import MultivarPoly, variables


class PhiCase(enum.Enum):
    THREE_LEVEL = "ThreeLevel"
    FOUR_LEVEL = "FourLevel"


_DEFAULTS = {PhiCase.THREE_LEVEL: (8, 4), PhiCase.FOUR_LEVEL: (12, 4)}


def counting_estimate(case: PhiCase, m1, m2) -> tuple[MultivarPoly, MultivarPoly]:
    """Left and right sides of the estimate with ``m1``, ``m2`` substituted."""
    if case is PhiCase.THREE_LEVEL:
        s, t0, t1, t2 = variables("s", "t0", "t1", "t2")
        lhs = (s + t0 + t1 + t2) * (m1 * s + m2 * (t0 + t1))
        rhs = (3 * s + 3 * t0 + 2 * t1 + t2) ** 2
    else:
        s, t0, t1, t2, t3 = variables("s", "t0", "t1", "t2", "t3")
        lhs = (s + t0 + t1 + t2 + t3) * (m1 * s + m2 * (t0 + t1 + t2))
        rhs = (4 * s + 4 * t0 + 3 * t1 + 2 * t2 + t3) ** 2
    return lhs, rhs


def phi_three_level() -> MultivarPoly:
    s, t0, t1, t2 = variables("s", "t0", "t1", "t2")
    return (s - t2) ** 2 + 6 * s * t0 + 5 * t0**2 + 4 * t0 * t1 + 2 * t0 * t2


@dataclass(frozen=True)
class PhiReport:
    case: PhiCase
    phi: MultivarPoly  # rhs - lhs after substitution
    square: MultivarPoly | None  # the split-off square (four-level only)
    remainder: MultivarPoly  # phi minus the reference form or square
    holds: bool

    def remainder_coefficients(self) -> list[tuple[str, Fraction]]:
        names = self.remainder.variables
        out = []
        for e, c in self.remainder.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(names, e) if k) or "1"
            out.append((mono, c))
        return out


def phi_report(case: PhiCase, m1=None, m2=None) -> PhiReport:
    d1, d2 = _DEFAULTS[case]
    m1 = Fraction(d1 if m1 is None else m1)
    m2 = Fraction(d2 if m2 is None else m2)
    lhs, rhs = counting_estimate(case, m1, m2)
    phi = rhs - lhs
    if case is PhiCase.THREE_LEVEL:
        rem = phi - phi_three_level()
        return PhiReport(case, phi, None, rem, rem.is_zero())
    s, _, _, _, t3 = variables("s", "t0", "t1", "t2", "t3")
    square = (2 * s - t3) ** 2
    rem = phi - square
    ok = all(c >= 0 for c in rem.terms.values())
    return PhiReport(case, phi, square, rem, ok)


def check_phi_identity(case: PhiCase | str, m1=None, m2=None) -> bool:
    """Exact check; ``m1``, ``m2`` override the boundary values."""
    return phi_report(PhiCase(case) if isinstance(case, str) else case, m1, m2).holds
