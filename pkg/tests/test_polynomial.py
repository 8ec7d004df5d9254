from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from fanocert.optimize import MultivarPoly, variables

NAMES = ("x", "y", "z")
SYMS = sympy.symbols(NAMES)

exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, st.fractions(min_value=-9, max_value=9, max_denominator=5), max_size=5)


def to_sympy(terms):
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**k for s, k in zip(SYMS, e)]) for e, c in terms.items()),
        sympy.Integer(0),
    )


def same(p: MultivarPoly, expr) -> bool:
    ref = sympy.Poly(sympy.expand(expr), *SYMS) if expr != 0 else None
    got = {e: c for e, c in p.terms.items()}
    want = {} if ref is None else {m: Fraction(int(c.p), int(c.q)) for m, c in ref.terms() if c != 0}
    return got == want


@given(polys, polys)
def test_ring_operations_match_sympy(a, b):
    pa, pb = MultivarPoly(NAMES, a), MultivarPoly(NAMES, b)
    sa, sb = to_sympy(a), to_sympy(b)
    assert same(pa + pb, sa + sb)
    assert same(pa - pb, sa - sb)
    assert same(pa * pb, sa * sb)


@given(polys, st.integers(0, 3))
def test_power_matches_sympy(a, k):
    assert same(MultivarPoly(NAMES, a) ** k, to_sympy(a) ** k)


@given(polys, polys)
def test_equality_is_structural(a, b):
    pa, pb = MultivarPoly(NAMES, a), MultivarPoly(NAMES, b)
    assert (pa == pb) == (sympy.expand(to_sympy(a) - to_sympy(b)) == 0)
    if pa == pb:
        assert hash(pa) == hash(pb)


@given(polys, st.fractions(max_denominator=9), st.fractions(max_denominator=9), st.fractions(max_denominator=9))
def test_evaluate_and_subs(a, x, y, z):
    p = MultivarPoly(NAMES, a)
    full = p.evaluate({"x": x, "y": y, "z": z})
    assert p.subs(x=x, y=y, z=z).coefficient() == full
    assert p.subs(x=x).evaluate({"x": 0, "y": y, "z": z}) == full


def test_printing_and_order():
    x, y, z = variables(*NAMES)
    p = (x - z) ** 2 + 6 * x * y
    assert str(p) == "x^2 + 6*x*y - 2*x*z + z^2"
    assert p.coefficient(x=1, z=1) == -2
    assert str(MultivarPoly(NAMES)) == "0"


def test_mismatched_variables():
    (x,) = variables("x")
    (y,) = variables("y")
    with pytest.raises(ValueError):
        x + y
    with pytest.raises(KeyError):
        MultivarPoly.var("w", NAMES)
