from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from fanocert.arith import QuadExt
from fanocert.errors import EmptyRange, UnknownConstraintId
from fanocert.lpsolve import (
    FarkasCertificate,
    certify_tail,
    combine,
    decide,
    format_certificate,
    parse_certificate,
    scan_threshold,
    verify_certificate,
)
from fanocert.sysmodel import (
    LinearConstraint,
    LinearSystem,
    Relation,
    Variable,
    instantiate,
    limit_system,
    load_system,
    parse_system,
    relax_strict,
)


def numeric(text, M=1):
    return relax_strict(instantiate(parse_system(text), M))


# -- worked examples ---------------------------------------------------------------


def test_case_1_1_at_15_infeasible():
    s = relax_strict(instantiate(load_system("case_1_1"), 15))
    res = decide(s)
    assert res.status == "Infeasible"
    assert verify_certificate(s, res.cert)
    comb = combine(s, res.cert)
    assert comb.is_contradiction and comb.rhs < 0


def test_unit_interval_feasible():
    res = decide(numeric("var x >= 0; x >= 0; x <= 1;"))
    assert res.feasible and res.point == {"x": 0}


def test_small_farkas_example():
    s = numeric("var x >= 0; x >= 1; x <= 0;")
    res = decide(s)
    assert not res.feasible
    assert res.cert.multipliers == {"r1": 1, "r2": 1}
    assert str(combine(s, res.cert)) == "0 <= -1"


def test_zero_multipliers_prove_nothing():
    s = relax_strict(instantiate(load_system("case_1_1"), 15))
    assert not verify_certificate(s, FarkasCertificate({c.cid: 0 for c in s.constraints}))
    assert not verify_certificate(s, FarkasCertificate({}))


def test_unknown_constraint_id():
    s = numeric("var x >= 0; x >= 1; x <= 0;")
    with pytest.raises(UnknownConstraintId):
        verify_certificate(s, FarkasCertificate({"r9": 1}))


@pytest.mark.parametrize("M", [15, 18, 40, "limit"])
def test_perturbed_certificates_fail(M):
    ps = load_system("case_1_1")
    s = relax_strict(limit_system(ps) if M == "limit" else instantiate(ps, M))
    cert = decide(s).cert
    assert verify_certificate(s, cert)
    for cid, y in cert.all_multipliers().items():
        if y != 0:
            assert not verify_certificate(s, cert.negated(cid)), cid


def test_scaled_certificate_still_verifies():
    s = relax_strict(instantiate(load_system("case_1_1"), 15))
    cert = decide(s).cert
    scaled = FarkasCertificate(
        {k: 7 * v for k, v in cert.multipliers.items()}, {k: 7 * v for k, v in cert.nonneg.items()}, cert.system, cert.M
    )
    assert verify_certificate(s, scaled)


def test_certificate_text_round_trip():
    s = relax_strict(instantiate(load_system("case_1_1"), 15))
    cert = decide(s).cert
    text = format_certificate(s, cert)
    back = parse_certificate(text)
    assert back.system == "case_1_1" and back.M == 15
    assert verify_certificate(s, back)
    assert format_certificate(s, back) == text


def test_sqrt2_system():
    # 10 + 2 sqrt2 = 12.828...: a + b can reach 13 but not 64/5
    s = numeric("var a >= 0; var b >= 0; a + b >= 10 + 2*sqrt2; a <= 3; b <= 10;")
    res = decide(s)
    assert res.feasible and s.satisfied_by(res.point)
    s = numeric("var a >= 0; var b >= 0; a + b >= 10 + 2*sqrt2; a <= 3; b <= 49/5;")
    res = decide(s)
    assert not res.feasible and verify_certificate(s, res.cert)
    assert isinstance(combine(s, res.cert).rhs, QuadExt)


def test_strict_decision():
    s = instantiate(parse_system("var x >= 0; x > 1; x < 1;"), 1)
    assert not decide(s).feasible
    s = instantiate(parse_system("var x >= 0; x >= 1; x < 1;"), 1)
    res = decide(s)
    assert not res.feasible and verify_certificate(s, res.cert)
    comb = combine(s, res.cert)
    assert comb.strict and comb.rhs == 0
    s = instantiate(parse_system("var x >= 0; x > 1; x < 2;"), 1)
    res = decide(s)
    assert res.feasible and 1 < res.point["x"] < 2


# -- scans and tails -------------------------------------------------------------


def test_scan_case_1_1_claimed_range():
    rep = scan_threshold(load_system("case_1_1"), 5, 200)
    assert rep.infeasible_on(14, 200)
    assert rep.minimal_infeasible_M == 12
    assert any(rep.feasible[M] for M in range(5, 14))


def test_scan_case_2_3():
    rep = scan_threshold(load_system("case_2_3"), 4, 200)
    assert rep.infeasible_on(6, 200, strict=True)
    assert rep.minimal_infeasible_M == 7


def test_scan_keeps_verified_certificates():
    s = load_system("case_2_3")
    rep = scan_threshold(s, 6, 12, keep_certificates=True)
    for M, cert in rep.certificates.items():
        assert verify_certificate(relax_strict(instantiate(s, M)), cert)


def test_scan_empty_range():
    with pytest.raises(EmptyRange):
        scan_threshold(load_system("case_1_1"), 20, 10)


def test_certify_tail_case_1_1():
    s = load_system("case_1_1")
    tail = certify_tail(s, 18)
    assert tail.certified and tail.method == "limit+monotone"
    for M in (19, 25, 118):
        assert not decide(relax_strict(instantiate(s, M))).feasible


def test_certify_tail_quadric():
    s = load_system("case_2_1_quadric")
    # feasible at M = 5 in Q(sqrt2), so the precondition fails there
    assert not certify_tail(s, 5).certified
    res = decide(relax_strict(instantiate(s, 5)))
    assert res.feasible
    assert relax_strict(instantiate(s, 5)).satisfied_by(res.point)
    assert certify_tail(s, 6).certified


def test_certify_tail_rejects_increasing_bound():
    s = parse_system(
        "param M in [2, inf);\nvar x >= 0;\nx <= (2*M-1)/M;\nx >= 3;\n", "grow"
    )
    assert not decide(relax_strict(instantiate(s, 2))).feasible
    tail = certify_tail(s, 2)
    assert not tail.certified
    assert "dominance" in tail.reason and tail.row == "r1"


def test_tail_certificate_implies_scan_agrees():
    for name in ("case_1_1", "case_2_1_quadric", "case_2_2_notQ", "case_2_3"):
        s = load_system(name)
        rep = scan_threshold(s, int(s.meta["scan"].split()[0]), 120)
        if rep.tail_certified:
            assert rep.infeasible_on(rep.minimal_infeasible_M, 120)
            M0 = rep.minimal_infeasible_M
            for M in (M0 + 1, M0 + 7, M0 + 100):
                assert not decide(relax_strict(instantiate(s, M))).feasible


# -- oracles ---------------------------------------------------------------------


def _random_system(rng, strict=False):
    n = int(rng.integers(1, 7))
    m = int(rng.integers(1, 13))
    variables = tuple(Variable(f"x{j}", bool(rng.random() < 0.7)) for j in range(n))
    rows = []
    rels = [Relation.LE, Relation.GE, Relation.EQ] + ([Relation.LT, Relation.GT] if strict else [])
    weights = [0.4, 0.4, 0.2] if not strict else [0.25, 0.25, 0.1, 0.2, 0.2]
    for i in range(m):
        coeffs = {}
        while not coeffs:
            for j in range(n):
                if rng.random() < 0.6:
                    a = int(rng.integers(-5, 6))
                    if a:
                        coeffs[f"x{j}"] = Fraction(a)
        rel = rels[int(rng.choice(len(rels), p=weights))]
        rows.append(LinearConstraint(f"r{i + 1}", coeffs, rel, Fraction(int(rng.integers(-10, 11)))))
    return LinearSystem("random", variables, tuple(rows), 1)


def _margin(s):
    """max t with every inequality row slack by t (t <= 1); equalities exact."""
    names = s.variable_names
    n = len(names)
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for c in s.constraints:
        row = np.zeros(n + 1)
        for v, a in c.coeffs.items():
            row[names.index(v)] = float(a)
        o = c.relation.orientation
        if o == 0:
            A_eq.append(row)
            b_eq.append(float(c.rhs))
        else:
            row = row * o
            row[n] = 1.0
            A_ub.append(row)
            b_ub.append(float(c.rhs) * o)
    for j, v in enumerate(s.variables):
        if v.nonneg:
            row = np.zeros(n + 1)
            row[j] = -1.0
            row[n] = 1.0
            A_ub.append(row)
            b_ub.append(0.0)
    cost = np.zeros(n + 1)
    cost[n] = -1.0
    bounds = [(None, None)] * n + [(None, 1.0)]
    res = linprog(cost, A_ub=np.array(A_ub) if A_ub else None, b_ub=b_ub or None,
                  A_eq=np.array(A_eq) if A_eq else None, b_eq=b_eq or None, bounds=bounds, method="highs")
    if res.status == 2:
        return None  # equalities alone inconsistent
    assert res.status == 0
    return -res.fun


def test_oracle_agreement_on_random_systems():
    rng = np.random.default_rng(2013)
    decided = 0
    for _ in range(500):
        s = _random_system(rng)
        res = decide(s)
        if res.feasible:
            assert s.satisfied_by(res.point)
        else:
            assert verify_certificate(s, res.cert)
        t = _margin(s)
        if t is None:
            assert not res.feasible
            decided += 1
        elif t > 1e-6:
            assert res.feasible
            decided += 1
        elif t < -1e-6:
            assert not res.feasible
            decided += 1
    assert decided > 300


def test_oracle_agreement_on_random_strict_systems():
    rng = np.random.default_rng(77)
    for _ in range(300):
        s = _random_system(rng, strict=True)
        res = decide(s)
        if res.feasible:
            assert s.satisfied_by(res.point)
        else:
            assert verify_certificate(s, res.cert)
        t = _strict_margin(s)
        if t is None or t < -1e-6:
            assert not res.feasible
        elif t > 1e-6:
            assert res.feasible


def _strict_margin(s):
    """max t with strict rows slack by t and the other rows as stated.

    Without strict rows this is 1 when feasible, so t > 0 iff the strict
    system has a solution."""
    names = s.variable_names
    n = len(names)
    A_ub, b_ub, A_eq, b_eq = [], [], [], []
    for c in s.constraints:
        row = np.zeros(n + 1)
        for v, a in c.coeffs.items():
            row[names.index(v)] = float(a)
        o = c.relation.orientation
        if o == 0:
            A_eq.append(row)
            b_eq.append(float(c.rhs))
            continue
        row = row * o
        row[n] = 1.0 if c.relation.strict else 0.0
        A_ub.append(row)
        b_ub.append(float(c.rhs) * o)
    for j, v in enumerate(s.variables):
        if v.nonneg:
            row = np.zeros(n + 1)
            row[j] = -1.0
            A_ub.append(row)
            b_ub.append(0.0)
    cost = np.zeros(n + 1)
    cost[n] = -1.0
    res = linprog(cost, A_ub=np.array(A_ub) if A_ub else None, b_ub=b_ub or None,
                  A_eq=np.array(A_eq) if A_eq else None, b_eq=b_eq or None,
                  bounds=[(None, None)] * n + [(None, 1.0)], method="highs")
    if res.status == 2:
        return None
    assert res.status == 0
    return -res.fun


def fourier_motzkin(s) -> bool:
    """Exact feasibility by eliminating variables one at a time (small systems)."""
    names = s.variable_names
    rows = []  # (coeff vector, rhs, strict) meaning a.x <= b or a.x < b
    for c in s.constraints:
        a = [Fraction(c.coeffs.get(v, 0)) for v in names]
        o = c.relation.orientation
        if o == 0:
            rows.append((a, Fraction(c.rhs), False))
            rows.append(([-x for x in a], -Fraction(c.rhs), False))
        else:
            rows.append(([o * x for x in a], o * Fraction(c.rhs), c.relation.strict))
    for j, v in enumerate(s.variables):
        if v.nonneg:
            a = [Fraction(0)] * len(names)
            a[j] = Fraction(-1)
            rows.append((a, Fraction(0), False))
    for j in range(len(names)):
        pos = [r for r in rows if r[0][j] > 0]
        neg = [r for r in rows if r[0][j] < 0]
        rest = [r for r in rows if r[0][j] == 0]
        for (a, b, sa), (c, d, sc) in product(pos, neg):
            la, lc = a[j], -c[j]
            rest.append(([lc * x + la * y for x, y in zip(a, c)], lc * b + la * d, sa or sc))
        rows = rest
    return all((b > 0) if strict else (b >= 0) for _, b, strict in rows)


def test_fourier_motzkin_cross_check():
    rng = np.random.default_rng(5)
    checked = 0
    while checked < 150:
        s = _random_system(rng, strict=True)
        if len(s.variables) > 4 or len(s.constraints) > 7:
            continue
        assert decide(s).feasible == fourier_motzkin(s)
        assert decide(relax_strict(s)).feasible == fourier_motzkin(relax_strict(s))
        checked += 1


@pytest.mark.parametrize("name", ["case_2_3", "case_2_1_quadric"])
def test_fourier_motzkin_on_catalog(name):
    s = load_system(name)
    if len(s.variables) > 8:
        pytest.skip("too many variables for elimination")
    for M in (6, 7, 12):
        lin = instantiate(s, M)
        if not lin.is_rational:
            continue
        assert decide(relax_strict(lin)).feasible == fourier_motzkin(relax_strict(lin))


def test_relaxation_property():
    # relaxed infeasible implies strict infeasible: random points on the
    # relaxed region's boundary never satisfy the strict system
    rng = np.random.default_rng(9)
    for _ in range(200):
        s = _random_system(rng, strict=True)
        r = relax_strict(s)
        if not decide(r).feasible:
            assert not decide(s).feasible
            for _ in range(20):
                pt = {v: Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 5))) for v in s.variable_names}
                assert not s.satisfied_by(pt)


ints = st.integers(-6, 6)


@settings(max_examples=150)
@given(st.lists(st.tuples(ints, ints, ints, st.sampled_from(["<=", ">=", "="])), min_size=1, max_size=6))
def test_decide_is_sound(rows):
    lines = ["var x >= 0;", "var y;", "var z >= 0;"]
    for a, b, c, rel in rows:
        if a == 0 and b == 0:
            continue
        lines.append(f"{a}*x + {b}*y {rel} {c};")
    if len(lines) == 3:
        return
    s = numeric("\n".join(lines))
    res = decide(s)
    if res.feasible:
        assert s.satisfied_by(res.point)
    else:
        assert verify_certificate(s, res.cert)
    assert res.feasible == fourier_motzkin(s)
