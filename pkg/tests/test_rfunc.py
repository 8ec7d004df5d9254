from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from fanocert.errors import DomainError
from fanocert.rfunc import (
    Infinite,
    ParamCoeff,
    Trend,
    certify_monotone,
    count_roots_above,
    eval_at,
    limit_at_infinity,
    poly_divmod,
    poly_gcd,
    poly_mul,
)

M = ParamCoeff.param()


def test_eval_examples():
    assert eval_at(8 * M / (3 * (M - 2)), 15) == Fraction(40, 13)
    assert eval_at(2 * M / (M - 2), 4) == 4
    with pytest.raises(DomainError):
        eval_at(4 * M / (M - 3), 3)


def test_limit_examples():
    assert limit_at_infinity(8 * M / (3 * (M - 2))) == Fraction(8, 3)
    assert limit_at_infinity(7 * (M - 2) / (6 * M)) == Fraction(7, 6)
    assert limit_at_infinity((M - 4) * (M - 3) / 2) == Infinite(1)
    assert limit_at_infinity(1 / M) == 0
    assert limit_at_infinity(-(M * M) / (M + 1)) == Infinite(-1)


def test_monotone_examples():
    assert certify_monotone(8 * M / (3 * (M - 2)), 3) is Trend.DECREASING_ON_TAIL
    assert certify_monotone(M, 1) is Trend.INCREASING_ON_TAIL
    assert certify_monotone(7 * (M - 2) / (6 * M), 1) is Trend.INCREASING_ON_TAIL
    assert certify_monotone(ParamCoeff.const(3), 1) is Trend.CONSTANT


def test_derivative_numerators():
    # frozen by hand: d/dM of 8M/(3M-6) has numerator 8(3M-6) - 8M*3 = -48
    assert (8 * M / (3 * (M - 2))).derivative_numerator() == (-48,)
    assert (7 * (M - 2) / (6 * M)).derivative_numerator() == (84,)


def test_monotone_pole_in_tail():
    with pytest.raises(DomainError):
        certify_monotone(1 / (M - 10), 5)


def test_not_certified_when_turning_in_tail():
    # (M - 10)^2 decreases then increases after 10
    c = (M - 10) * (M - 10)
    assert certify_monotone(c, 1) is Trend.NOT_CERTIFIED
    assert certify_monotone(c, 10) is Trend.INCREASING_ON_TAIL


def test_lowest_terms():
    c = (M * M - 4) / (M - 2)
    assert c == M + 2
    assert str(8 * M / (3 * (M - 2))) == "8*M/(3*M - 6)"


def test_count_roots_above_against_sympy():
    x = sympy.symbols("x")
    p = poly_mul(poly_mul((-3, 1), (-7, 1)), (1, 0, 1))  # (x-3)(x-7)(x^2+1)
    assert count_roots_above(p, 0) == 2
    assert count_roots_above(p, 5) == 1
    expr = sum(c * x**k for k, c in enumerate(p))
    assert len([r for r in sympy.real_roots(expr) if r > 5]) == 1


small_int = st.integers(-20, 20)
polys = st.lists(small_int, min_size=1, max_size=4).filter(lambda p: any(p))


@given(polys, polys)
def test_divmod_reconstructs(p, q):
    quo, rem = poly_divmod(p, q)
    back = [Fraction(0)] * max(len(p), len(poly_mul(quo, q)), len(rem))
    for k, c in enumerate(poly_mul(quo, q)):
        back[k] += c
    for k, c in enumerate(rem):
        back[k] += c
    while len(back) > 1 and back[-1] == 0:
        back.pop()
    want = list(p)
    while len(want) > 1 and want[-1] == 0:
        want.pop()
    assert back == want


@given(polys, polys)
def test_gcd_divides(p, q):
    g = poly_gcd(p, q)
    for f in (p, q):
        _, rem = poly_divmod(f, g)
        assert all(c == 0 for c in rem)


@given(polys, polys, st.integers(1, 30), st.integers(0, 200), st.integers(0, 200))
def test_monotone_certificate_is_sound(num, den, M0, k1, k2):
    try:
        c = ParamCoeff(num, den)
        trend = c.certify_monotone(M0)
    except DomainError:
        return
    M1, M2 = sorted((M0 + k1, M0 + k2))
    if trend is Trend.DECREASING_ON_TAIL:
        assert c.eval_at(M1) >= c.eval_at(M2)
    elif trend is Trend.INCREASING_ON_TAIL:
        assert c.eval_at(M1) <= c.eval_at(M2)
    elif trend is Trend.CONSTANT:
        assert c.eval_at(M1) == c.eval_at(M2)


@given(polys, polys, st.integers(1, 30))
def test_converges_to_limit_once_monotone(num, den, M0):
    try:
        c = ParamCoeff(num, den)
        trend = c.certify_monotone(M0)
    except DomainError:
        return
    lim = c.limit_at_infinity()
    assume(trend is not Trend.NOT_CERTIFIED and not isinstance(lim, Infinite))
    gaps = [abs(c.eval_at(M0 + 10**k) - lim) for k in range(4)]
    assert all(a >= b for a, b in zip(gaps, gaps[1:]))
