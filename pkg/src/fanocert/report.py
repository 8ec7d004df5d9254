"""The full verification run and its text / JSON reports.

Every expectation comes from the data files; this module only compares.
Output is deterministic: no timestamps, fixed ordering, exact values
printed in scalar syntax.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .arith import format_scalar
from .chains import chain_closed_form, chain_names, load_chain, threshold_M
from .lpsolve import decide, format_certificate, scan_threshold
from .optimize import (
    PhiCase,
    check_steps,
    load_pipeline,
    load_region,
    min_on_triangle,
    min_quadratic_on_hyperplane,
    phi_report,
    pipeline_names,
    region_names,
)
from .resgraph import check_exhaustive, check_random
from .sysmodel import catalog_names, instantiate, limit_system, load_system, relax_strict


@dataclass
class CheckRecord:
    check_id: str
    anchor: str
    status: str  # PASS or FAIL
    expected: dict = field(default_factory=dict)
    observed: dict = field(default_factory=dict)
    certificates: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "id": self.check_id,
            "anchor": self.anchor,
            "status": self.status,
            "expected": self.expected,
            "observed": self.observed,
            "certificates": self.certificates,
            "notes": self.notes,
        }


@dataclass
class RunReport:
    checks: list = field(default_factory=list)
    version: str = __version__

    @property
    def verdict(self) -> str:
        return "PASS" if all(c.status == "PASS" for c in self.checks) else "FAIL"

    def as_dict(self) -> dict:
        return {
            "tool": "fanocert",
            "version": self.version,
            "verdict": self.verdict,
            "checks": [c.as_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        lines = [f"fanocert {self.version} verification report", ""]
        width = max((len(c.check_id) for c in self.checks), default=10)
        for c in self.checks:
            obs = ", ".join(f"{k}={v}" for k, v in c.observed.items())
            lines.append(f"{c.status}  {c.check_id:<{width}}  {obs}")
            lines.append(f"      {'':<{width}}  [{c.anchor}]")
            for n in c.notes:
                lines.append(f"      {'':<{width}}  note: {n}")
        lines.append("")
        passed = sum(c.status == "PASS" for c in self.checks)
        lines.append(f"{passed}/{len(self.checks)} checks passed: {self.verdict}")
        return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    return "none" if x is None else str(x)


def parse_expectation(value: str, scan_lo: int) -> int | None:
    value = value.strip()
    if value == "never":
        return None
    if value == "always":
        return scan_lo
    return int(value)


def system_expectations(s) -> tuple[int, int, int | None, int | None]:
    lo, hi = (int(x) for x in s.meta["scan"].split())
    exp = {"relaxed": None, "strict": None}
    for item in s.meta.get("expect", []):
        kind, _, value = item.partition(" ")
        exp[kind] = parse_expectation(value, lo)
    return lo, hi, exp["relaxed"], exp["strict"]


def _write_cert(out_dir: Path | None, lin, cert) -> str | None:
    if out_dir is None:
        return None
    folder = out_dir / "certificates"
    folder.mkdir(parents=True, exist_ok=True)
    name = f"{lin.name}_M{lin.M}.cert"
    (folder / name).write_text(format_certificate(lin, cert))
    return f"certificates/{name}"


def check_system(name: str, out_dir: Path | None = None) -> CheckRecord:
    s = load_system(name)
    lo, hi, exp_r, exp_s = system_expectations(s)
    rep = scan_threshold(s, lo, hi)
    rec = CheckRecord(f"system:{name}", s.meta.get("anchor", ""), "PASS")
    rec.expected = {"relaxed_from": _fmt(exp_r), "strict_from": _fmt(exp_s)}
    rec.observed = {
        "range": f"{lo}..{hi}",
        "relaxed_from": _fmt(rep.minimal_infeasible_M),
        "strict_from": _fmt(rep.minimal_infeasible_M_strict),
        "tail": rep.tail_method,
    }
    if rep.minimal_infeasible_M != exp_r or rep.minimal_infeasible_M_strict != exp_s:
        rec.status = "FAIL"
    if rep.minimal_infeasible_M is not None:
        lin = relax_strict(instantiate(s, rep.minimal_infeasible_M))
        res = decide(lin)
        path = _write_cert(out_dir, lin, res.cert)
        if path:
            rec.certificates.append(path)
    if s.depends_on_M():
        try:
            lim = relax_strict(limit_system(s))
            res = decide(lim)
            rec.observed["limit"] = res.status
            if exp_r is not None and res.feasible:
                rec.status = "FAIL"
                rec.notes.append("limit system is feasible although a tail is expected")
            if not res.feasible:
                path = _write_cert(out_dir, lim, res.cert)
                if path:
                    rec.certificates.append(path)
        except Exception as exc:  # divergent coefficient
            rec.observed["limit"] = "undefined"
            rec.notes.append(f"limit system: {exc}")
    claim = s.meta.get("claim")
    if claim and claim not in ("none", "any"):
        got = rep.minimal_infeasible_M_strict
        if got is not None and int(claim) != got:
            rec.notes.append(f"stated start M={claim}; exact strict start M={got}")
    if not rep.tail.certified and rep.tail.reason:
        rec.notes.append(f"tail: {rep.tail.reason}" + (f" ({rep.tail.row})" if rep.tail.row else ""))
    return rec


def check_chain(name: str) -> CheckRecord:
    c = load_chain(name)
    rec = CheckRecord(f"chain:{name}", c.anchor(), "PASS")
    f = chain_closed_form(c)
    th = threshold_M(c)
    rec.observed = {"closed_form": str(f), "first_ge": _fmt(th.first_ge), "first_gt": _fmt(th.first_gt)}
    if c.expected is not None:
        rec.expected["closed_form"] = str(c.expected)
        if f != c.expected:
            rec.status = "FAIL"
    meta = c.meta or {}
    if "threshold" in meta:
        parts = dict(p.strip().split() for p in meta["threshold"].split(","))
        rec.expected["first_ge"] = parts["ge"]
        rec.expected["first_gt"] = parts["gt"]
        if _fmt(th.first_ge) != parts["ge"] or _fmt(th.first_gt) != parts["gt"]:
            rec.status = "FAIL"
    if "claim" in meta and str(th.first_ge) != meta["claim"]:
        rec.notes.append(f"stated start M={meta['claim']}; exact M={th.first_ge}")
    return rec


def check_pipeline(name: str) -> CheckRecord:
    p = load_pipeline(name)
    steps = check_steps(p)
    ok = all(s.valid for s in steps)
    rec = CheckRecord(f"pipeline:{name}", p.meta.get("anchor", ""), "PASS" if ok else "FAIL")
    rec.observed = {s.step.name: f"{'>' if s.strict else '>='} {s.value}" for s in steps if s.value is not None}
    rec.notes = [f"{s.step.name}: {s.reason}" for s in steps if not s.valid]
    return rec


def check_phi() -> list[CheckRecord]:
    out = []
    for case, anchor in (
        (PhiCase.THREE_LEVEL, "three-level counting estimate at m1 = 8, m2 = 4"),
        (PhiCase.FOUR_LEVEL, "four-level counting estimate at m1 = 12, m2 = 4"),
    ):
        r = phi_report(case)
        rec = CheckRecord(f"phi:{case.value}", anchor, "PASS" if r.holds else "FAIL")
        rec.observed = {"phi": str(r.phi)}
        if r.square is not None:
            rec.observed["remainder"] = str(r.remainder)
        out.append(rec)
    return out


def check_region(name: str, use_numba=None) -> CheckRecord:
    e = load_region(name)
    m = min_on_triangle(e.objective, e.region, use_numba=use_numba)
    ok = m.verified and m.value == e.expected_value and m.argmin == e.expected_argmin
    rec = CheckRecord(f"minimum:{e.objective.value}:{name}", e.meta.get("anchor", ""), "PASS" if ok else "FAIL")
    rec.expected = {"min": format_scalar(e.expected_value), "argmin": "(" + ", ".join(map(format_scalar, e.expected_argmin)) + ")"}
    rec.observed = {
        "min": format_scalar(m.value),
        "argmin": "(" + ", ".join(map(format_scalar, m.argmin)) + ")",
        "verified": str(m.verified).lower(),
        "witness_lower": repr(m.witness[0]),
    }
    rec.notes = list(m.notes)
    return rec


def hyperplane_oracle_check(n: int = 200, seed: int = 509) -> tuple[int, float]:
    """Closed form against a dense least-squares solve of the KKT system."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    bad = 0
    for _ in range(n):
        K = int(rng.integers(2, 9))
        p = [Fraction(int(x), int(y)) for x, y in zip(rng.integers(1, 20, K), rng.integers(1, 6, K))]
        C = Fraction(int(rng.integers(1, 200)), int(rng.integers(1, 7)))
        nu1 = Fraction(int(rng.integers(0, 30)), int(rng.integers(1, 5)))
        theta, value = min_quadratic_on_hyperplane(p, C, nu1)
        w = np.array([float(x) for x in p[1:]])
        # minimise sum w x^2 subject to w.x = C - p1 nu1: stationarity 2 w x = lam w
        A = np.zeros((len(w) + 1, len(w) + 1))
        A[: len(w), : len(w)] = np.diag(2 * w)
        A[: len(w), -1] = -w
        A[-1, : len(w)] = w
        rhs = np.zeros(len(w) + 1)
        rhs[-1] = float(C - p[0] * nu1)
        sol = np.linalg.solve(A, rhs)
        num = float(p[0] * nu1 * nu1) + float(np.dot(w, sol[:-1] ** 2))
        err = abs(num - float(value)) / max(1.0, abs(float(value)))
        worst = max(worst, err)
        if err > 1e-9:
            bad += 1
    return bad, worst


def _system_checks(out_dir: Path | None, jobs: int) -> list[CheckRecord]:
    names = catalog_names()
    if jobs <= 1:
        return [check_system(n, out_dir) for n in names]
    # map keeps catalog order, so the report does not depend on scheduling
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(check_system, names, [out_dir] * len(names)))


def default_jobs() -> int:
    return max(1, min(4, os.cpu_count() or 1))


def run_all(out_dir: Path | None = None, use_numba=None, jobs: int | None = None) -> RunReport:
    rep = RunReport()
    rep.checks.extend(_system_checks(out_dir, default_jobs() if jobs is None else jobs))
    for name in chain_names():
        rep.checks.append(check_chain(name))
    for name in pipeline_names():
        rep.checks.append(check_pipeline(name))
    rep.checks.extend(check_phi())
    for name in region_names():
        rep.checks.append(check_region(name, use_numba))
    bad, worst = hyperplane_oracle_check()
    rec = CheckRecord("hyperplane:oracle", "minimum of the quadratic form on the Noether-Fano hyperplane",
                      "PASS" if bad == 0 else "FAIL")
    rec.observed = {"instances": "200", "mismatches": str(bad)}
    rep.checks.append(rec)
    ex = check_exhaustive(6, use_numba)
    rec = CheckRecord("graphs:exhaustive", "path counts and arrow removal, every graph with K <= 6",
                      "PASS" if ex.ok else "FAIL")
    rec.observed = {"graphs": str(ex.graphs), "removals": str(ex.removal_checked),
                    "violations": str(ex.dp_mismatches + ex.removal_violations + ex.inequality_violations)}
    rep.checks.append(rec)
    rnd = check_random(1000, 12, use_numba=use_numba)
    rec = CheckRecord("graphs:random", "path counts and arrow removal, 1000 random graphs with K <= 12",
                      "PASS" if rnd.ok else "FAIL")
    rec.observed = {"graphs": str(rnd.graphs),
                    "violations": str(rnd.dp_mismatches + rnd.removal_violations + rnd.inequality_violations)}
    rep.checks.append(rec)
    return rep
