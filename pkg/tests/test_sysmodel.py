from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fanocert.arith import QuadExt
from fanocert.errors import DomainError, SystemSyntaxError, UndeclaredVariable, UnknownSystem, ZeroRowConstraint
from fanocert.sysmodel import (
    Relation,
    catalog_names,
    format_system,
    instantiate,
    limit_system,
    load_system,
    parse_system,
    relax_strict,
)

CATALOG = catalog_names()


def test_catalog_contents():
    assert CATALOG == sorted(CATALOG)
    for name in (
        "case_1_1",
        "case_2_1_quadric",
        "case_2_1_hyperplane",
        "case_2_2_notQ",
        "case_2_2_notQ_refined",
        "case_2_2_inQ",
        "case_2_2_theta",
        "case_2_2_final",
        "case_2_3",
    ):
        assert name in CATALOG
    with pytest.raises(UnknownSystem):
        load_system("no_such_system")


@pytest.mark.parametrize("name", CATALOG)
def test_every_system_carries_anchor_and_expectations(name):
    s = load_system(name)
    assert s.meta.get("anchor")
    assert s.meta.get("scan")
    kinds = sorted(e.split()[0] for e in s.meta["expect"])
    assert kinds == ["relaxed", "strict"]


def test_case_1_1_shape():
    s = load_system("case_1_1")
    assert s.variable_names == ["d0", "d1", "m0", "m1", "l1", "m2", "l2", "de"]
    assert all(v.nonneg for v in s.variables)
    rel = [c.relation for c in s.constraints]
    assert len(rel) == 17
    assert rel.count(Relation.EQ) == 2


def test_case_1_1_at_15():
    lin = instantiate(load_system("case_1_1"), 15)
    assert lin.constraint("r3").coeffs["d0"] == Fraction(-40, 13)
    assert lin.constraint("r4").coeffs["d1"] == Fraction(-30, 13)
    assert lin.constraint("r14").coeffs["d1"] == -5


def test_case_1_1_branch_switch():
    s = load_system("case_1_1")
    assert instantiate(s, 17).constraint("r3").coeffs["d0"] == Fraction(-136, 45)
    assert instantiate(s, 18).constraint("r3").coeffs["d0"] == -3


def test_case_1_1_limit():
    lim = limit_system(load_system("case_1_1"))
    assert lim.M == "limit"
    # the max(3, .) branch wins in the limit; the other two are 2 and 4
    assert lim.constraint("r3").coeffs["d0"] == -3
    assert lim.constraint("r4").coeffs["d1"] == -2
    assert lim.constraint("r14").coeffs["d1"] == -4


def test_instantiate_outside_domain():
    s = load_system("case_1_1")
    with pytest.raises(DomainError):
        instantiate(s, 2)


def test_pole_inside_declared_domain():
    s = parse_system("param M in [1, inf);\nvar x >= 0;\nx <= 4*M/(M-3);\n")
    with pytest.raises(DomainError):
        instantiate(s, 3)


def test_minimal_system():
    s = parse_system("var x >= 0; x <= 1;")
    assert s.variable_names == ["x"] and len(s.constraints) == 1


def test_undeclared_variable():
    with pytest.raises(UndeclaredVariable):
        parse_system("x <= 1;")


def test_zero_row():
    with pytest.raises(ZeroRowConstraint):
        parse_system("var x >= 0; x - x <= 1;")


def test_syntax_error_location():
    with pytest.raises(SystemSyntaxError) as info:
        parse_system("var x >= 0;\nx <= 1 +;\n")
    assert info.value.line == 2
    assert info.value.column > 1


def test_sqrt2_rhs():
    s = parse_system("var a >= 0; var b >= 0; a + b > 10 + 2*sqrt2;")
    lin = relax_strict(instantiate(s, 1))
    c = lin.constraints[0]
    assert c.relation is Relation.GE
    assert c.rhs == QuadExt(10, 2)


def test_relax_strict():
    s = instantiate(parse_system("var x >= 0; x > 4; x < 9; x = 5;"), 1)
    r = relax_strict(s)
    assert [c.relation for c in r.constraints] == [Relation.GE, Relation.LE, Relation.EQ]
    assert [c.rhs for c in r.constraints] == [c.rhs for c in s.constraints]
    assert relax_strict(r) == r


def test_relaxed_case_1_1_is_what_a_solver_sees():
    r = relax_strict(instantiate(load_system("case_1_1"), 15))
    assert not r.has_strict
    assert r.constraint("r1").relation is Relation.GE


@pytest.mark.parametrize("name", CATALOG)
def test_round_trip(name):
    s = load_system(name)
    text = format_system(s)
    again = parse_system(text)
    assert again == s
    assert format_system(again) == text


@pytest.mark.parametrize("name", CATALOG)
def test_round_trip_values(name):
    s = load_system(name)
    again = parse_system(format_system(s))
    lo = int(s.meta["scan"].split()[0])
    for M in (lo, lo + 3, 97):
        assert instantiate(again, M) == instantiate(s, M)


coef = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@given(st.lists(st.tuples(coef, coef, st.sampled_from(["<=", ">=", "<", ">", "="]), coef), min_size=1, max_size=6))
def test_random_round_trip(rows):
    lines = ["var x >= 0;", "var y;"]
    for a, b, rel, c in rows:
        if a == 0 and b == 0:
            continue
        lines.append(f"({a})*x + ({b})*y {rel} {c};")
    if len(lines) == 2:
        return
    s = parse_system("\n".join(lines))
    assert parse_system(format_system(s)) == s
