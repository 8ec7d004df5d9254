"""Minimum of ``sum p_i nu_i^2`` on ``sum p_i nu_i = C`` with ``nu_1`` fixed."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DegenerateWeights, DomainError


def min_quadratic_on_hyperplane(p, C, nu1) -> tuple[Fraction, Fraction]:
    """Return ``(theta, min_value)``.

    With ``nu_1`` fixed the remaining weights see a single linear
    constraint, and by Cauchy-Schwarz the minimum sits at the common value
    ``theta = (C - p_1 nu_1) / sum_{i>=2} p_i``.
    """
    p = [Fraction(x) for x in p]
    if not p:
        raise DomainError("empty weight list")
    if any(x < 0 for x in p):
        raise DomainError("weights must be nonnegative")
    rest = sum(p[1:], Fraction(0))
    if rest == 0:
        raise DegenerateWeights("weights after the first sum to zero")
    nu1 = Fraction(nu1)
    theta = (Fraction(C) - p[0] * nu1) / rest
    return theta, p[0] * nu1 * nu1 + rest * theta * theta
