"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction


class MultivarPoly:
    """Polynomial over a fixed ordered tuple of variable names.

    Terms map exponent tuples to nonzero ``Fraction`` coefficients, so two
    polynomials over the same variables are equal exactly when their term
    dictionaries are.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        self.terms = {e: Fraction(c) for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def var(cls, name: str, variables) -> MultivarPoly:
        variables = tuple(variables)
        e = tuple(1 if v == name else 0 for v in variables)
        if sum(e) != 1:
            raise KeyError(name)
        return cls(variables, {e: 1})

    @classmethod
    def const(cls, value, variables) -> MultivarPoly:
        return cls(variables, {(0,) * len(tuple(variables)): value})

    def _coerce(self, other) -> MultivarPoly:
        if isinstance(other, MultivarPoly):
            if other.variables != self.variables:
                raise ValueError("polynomials over different variables")
            return other
        return MultivarPoly.const(other, self.variables)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultivarPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultivarPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultivarPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = MultivarPoly.const(1, self.variables)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, MultivarPoly):
            return self.variables == other.variables and self.terms == other.terms
        return self == self._coerce(other)

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, **powers) -> Fraction:
        e = tuple(powers.get(v, 0) for v in self.variables)
        return self.terms.get(e, Fraction(0))

    def subs(self, **values) -> MultivarPoly:
        """Substitute exact numbers for some variables (others kept)."""
        out: dict = {}
        for e, c in self.terms.items():
            k = Fraction(c)
            ne = list(e)
            for i, v in enumerate(self.variables):
                if v in values:
                    k *= Fraction(values[v]) ** e[i]
                    ne[i] = 0
            ne = tuple(ne)
            out[ne] = out.get(ne, 0) + k
        return MultivarPoly(self.variables, out)

    def evaluate(self, point: dict):
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.variables, e):
                if k:
                    term = term * point[v] ** k
            total = total + term
        return total

    def sorted_terms(self) -> list:
        """Graded lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"MultivarPoly({self})"


def variables(*names) -> tuple:
    """Return one polynomial per name, all over the same variable tuple."""
    return tuple(MultivarPoly.var(n, names) for n in names)
