from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fanocert.arith import (
    Ordering,
    QuadExt,
    format_scalar,
    parse_scalar,
    qext_cmp,
    qext_mul,
    scalar_max,
    sign,
    to_fraction,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda q: abs(q) < 10**9)
quads = st.builds(QuadExt, rationals, rationals)


def test_mul_examples():
    assert qext_mul(QuadExt(1, 1), QuadExt(1, -1)) == QuadExt(-1, 0)
    assert qext_mul(QuadExt(0, 1), QuadExt(0, 1)) == QuadExt(2, 0)
    assert qext_mul(QuadExt(10, 2), QuadExt(1, 0)) == QuadExt(10, 2)


def test_cmp_examples():
    assert qext_cmp(QuadExt(10, 2), QuadExt(12)) is Ordering.GT
    assert qext_cmp(QuadExt(10, 2), 13) is Ordering.LT
    assert qext_cmp(QuadExt(5, 0), QuadExt(5, 0)) is Ordering.EQ


def test_canonical_rational_parts():
    x = QuadExt(Fraction(6, 4), Fraction(-10, 20))
    assert (x.a.numerator, x.a.denominator) == (3, 2)
    assert (x.b.numerator, x.b.denominator) == (-1, 2)
    assert QuadExt(3, 0) == 3 and hash(QuadExt(3, 0)) == hash(3)
    assert to_fraction(QuadExt(Fraction(7, 3))) == Fraction(7, 3)
    assert isinstance(to_fraction(QuadExt(7, 0)), Fraction)


def test_division_and_inverse():
    x = QuadExt(10, 2)
    assert x / x == 1
    assert (1 / QuadExt(1, 1)) == QuadExt(-1, 1)


@pytest.mark.parametrize(
    "text, value",
    [
        ("7", Fraction(7)),
        ("-3/4", Fraction(-3, 4)),
        ("10 + 2*sqrt2", QuadExt(10, 2)),
        ("sqrt2", QuadExt(0, 1)),
        ("-1/2 - 3*sqrt2", QuadExt(Fraction(-1, 2), -3)),
    ],
)
def test_scalar_syntax_round_trip(text, value):
    assert parse_scalar(text) == value
    assert format_scalar(value) == text


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_scalar("sqrt3")


def test_scalar_max():
    assert scalar_max(3, Fraction(10, 3)) == Fraction(10, 3)
    assert scalar_max(QuadExt(0, 2), 3) == 3


@given(rationals, rationals, rationals)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(quads, quads, quads)
def test_quad_field_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x - y) + y == x


@given(quads)
def test_cmp_reflexive(x):
    assert qext_cmp(x, x) is Ordering.EQ


@given(quads, quads)
def test_cmp_antisymmetric(x, y):
    assert qext_cmp(x, y) == -qext_cmp(y, x)


@given(quads, quads, quads)
def test_cmp_transitive(x, y, z):
    if qext_cmp(x, y) <= 0 and qext_cmp(y, z) <= 0:
        assert qext_cmp(x, z) <= 0


def test_sign_against_high_precision():
    rng = np.random.default_rng(11)
    mpmath.mp.dps = 60
    root2 = mpmath.sqrt(2)
    for _ in range(10_000):
        a = Fraction(int(rng.integers(-10**6, 10**6)), int(rng.integers(1, 1000)))
        b = Fraction(int(rng.integers(-10**6, 10**6)), int(rng.integers(1, 1000)))
        ref = mpmath.mpf(a.numerator) / a.denominator + root2 * mpmath.mpf(b.numerator) / b.denominator
        expected = 0 if ref == 0 else (1 if ref > 0 else -1)
        assert sign(QuadExt(a, b)) == expected


def test_sign_near_cancellation():
    # 99/70 is a convergent of sqrt2; the difference is about 7e-5
    assert sign(QuadExt(Fraction(99, 70), -1)) > 0
    assert sign(QuadExt(Fraction(-99, 70), 1)) < 0
    assert sign(QuadExt(Fraction(-140, 99), 1)) > 0
    assert sign(QuadExt(Fraction(665857, 470832), -1)) > 0
