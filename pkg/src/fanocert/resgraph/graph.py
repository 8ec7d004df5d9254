"""Resolution graphs: path counts, arrow removal, discrepancy groups."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import LengthMismatch, SystemSyntaxError


@dataclass(frozen=True)
class ResolutionGraph:
    """Vertices ``1..K``; an arrow ``(i, j)`` with ``i > j`` means E_i lies over E_j.

    ``delta`` has one entry per vertex (``delta[0]`` is E_1's).  ``L`` is
    the last vertex of the lower part.  With ``check=True`` every vertex
    ``i >= 2`` must have an outgoing arrow.
    """

    K: int
    arrows: frozenset
    delta: tuple
    L: int
    levels: int = 3
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("K must be positive")
        if len(self.delta) != self.K:
            raise LengthMismatch(f"expected {self.K} discrepancies, got {len(self.delta)}")
        if not 1 <= self.L <= self.K:
            raise ValueError(f"L={self.L} outside 1..{self.K}")
        if self.levels not in (3, 4):
            raise ValueError("levels must be 3 or 4")
        for i, j in self.arrows:
            if not (1 <= j < i <= self.K):
                raise ValueError(f"arrow {i}->{j} must go to a smaller index in 1..{self.K}")
        for i, d in enumerate(self.delta[1:], start=2):
            if not 1 <= d <= self.levels:
                raise ValueError(f"delta_{i}={d} outside 1..{self.levels}")
        if self.check:
            sources = {i for i, _ in self.arrows}
            for i in range(2, self.K + 1):
                if i not in sources:
                    raise ValueError(f"vertex {i} has no outgoing arrow")

    def out_of(self, i: int) -> list[int]:
        return sorted((j for a, j in self.arrows if a == i), reverse=True)

    def __str__(self):
        return format_graph(self)


def path_counts(g: ResolutionGraph, src: int | None = None) -> dict[int, int]:
    """``p[j]`` = number of directed paths from ``src`` (default E_K) to E_j."""
    src = g.K if src is None else src
    if not 1 <= src <= g.K:
        raise ValueError(f"vertex {src} not in 1..{g.K}")
    out: dict[int, list[int]] = {}
    for i, j in g.arrows:
        out.setdefault(i, []).append(j)
    p = {v: 0 for v in range(1, g.K + 1)}
    p[src] = 1
    for i in range(src, 0, -1):
        if p[i]:
            for j in out.get(i, ()):
                p[j] += p[i]
    return p


def remove_arrows(g: ResolutionGraph) -> ResolutionGraph:
    """Drop every arrow from the upper part (index > L) into E_1."""
    kept = frozenset((i, j) for i, j in g.arrows if not (j == 1 and i > g.L))
    return ResolutionGraph(g.K, kept, g.delta, g.L, g.levels, check=False)


@dataclass(frozen=True)
class SigmaGroups:
    p1: int
    sigma: tuple  # Sigma_0 (top discrepancy) .. Sigma_{levels-1} (delta = 1)

    def as_dict(self) -> dict:
        out = {"p1": self.p1}
        for k, s in enumerate(self.sigma):
            out[f"S{k}"] = s
        return out


def sigma_groups(g: ResolutionGraph) -> SigmaGroups:
    """Sums of ``p_{K,i}`` (i >= 2) over discrepancy classes, plus ``p_1``."""
    p = path_counts(g)
    sig = [0] * g.levels
    for i in range(2, g.K + 1):
        sig[g.levels - g.delta[i - 1]] += p[i]
    return SigmaGroups(p[1], tuple(sig))


class NFKind(enum.Enum):
    CANONICAL3 = "Canonical3"
    LOG_CANONICAL4 = "LogCanonical4"
    CASE51 = "Case51"


@dataclass(frozen=True)
class NFEvaluation:
    lhs: Fraction
    rhs: Fraction
    satisfied: bool


def evaluate_nf(g: ResolutionGraph, nu, kind: NFKind | str = NFKind.CANONICAL3) -> NFEvaluation:
    """Noether-Fano type inequality ``sum p_i nu_i > rhs`` with n = 1."""
    kind = NFKind(kind) if isinstance(kind, str) else kind
    nu = [Fraction(x) for x in nu]
    if len(nu) != g.K:
        raise LengthMismatch(f"expected {g.K} multiplicities, got {len(nu)}")
    p = path_counts(g)
    lhs = sum((p[i] * nu[i - 1] for i in range(1, g.K + 1)), Fraction(0))
    if kind is NFKind.CASE51:
        s0 = sum(p[i] for i in range(2, g.L + 1))
        s1 = sum(p[i] for i in range(g.L + 1, g.K + 1))
        rhs = Fraction(3 * p[1] + 2 * s0 + s1)
    else:
        top = 3 if kind is NFKind.CANONICAL3 else 4
        rhs = Fraction(top * p[1] + sum(p[i] * g.delta[i - 1] for i in range(2, g.K + 1)))
    return NFEvaluation(lhs, rhs, lhs > rhs)


def counting_mult_bound(g: ResolutionGraph, nu) -> Fraction:
    """``sum p_i nu_i^2``, the bound the multiplicities of the cycle must meet."""
    nu = [Fraction(x) for x in nu]
    if len(nu) != g.K:
        raise LengthMismatch(f"expected {g.K} multiplicities, got {len(nu)}")
    p = path_counts(g)
    return sum((p[i] * nu[i - 1] ** 2 for i in range(1, g.K + 1)), Fraction(0))


# -- text format -----------------------------------------------------------------

_ARROW = re.compile(r"\(\s*(\d+)\s*>\s*(\d+)\s*\)")


def format_graph(g: ResolutionGraph) -> str:
    arrows = ",".join(f"({i}>{j})" for i, j in sorted(g.arrows, reverse=True))
    extra = f"; levels={g.levels}" if g.levels != 3 else ""
    return f"K={g.K}; L={g.L}; delta={','.join(map(str, g.delta))}; arrows={arrows}{extra}"


def parse_graph(text: str, check: bool = True) -> ResolutionGraph:
    fields = {}
    for part in text.strip().rstrip(";").split(";"):
        if not part.strip():
            continue
        key, eq, value = part.partition("=")
        if not eq:
            raise SystemSyntaxError(f"expected key=value, got {part.strip()!r}", 1, 1)
        fields[key.strip()] = value.strip()
    missing = {"K", "L", "delta", "arrows"} - set(fields)
    if missing:
        raise SystemSyntaxError(f"missing fields: {', '.join(sorted(missing))}", 1, 1)
    arrows_text = fields["arrows"]
    arrows = frozenset((int(a), int(b)) for a, b in _ARROW.findall(arrows_text))
    if _ARROW.sub("", arrows_text).replace(",", "").strip():
        raise SystemSyntaxError(f"malformed arrow list {arrows_text!r}", 1, 1)
    delta = tuple(int(x) for x in fields["delta"].split(",") if x.strip())
    return ResolutionGraph(
        int(fields["K"]), arrows, delta, int(fields["L"]), int(fields.get("levels", 3)), check
    )
