"""Command-line front end.

Exit codes: 0 when every result matches the data files, 1 on a mismatch,
2 on usage or input errors (unknown names, poles in a range, bad files).
``FANOCERT_DATA`` points the tool at another data directory.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .arith import format_scalar
from .chains import chain_closed_form, chain_value, load_chain, threshold_M
from .errors import FanoCertError
from .lpsolve import decide, format_certificate, parse_certificate, scan_threshold, verify_certificate
from .optimize import Objective, TriangleRegion, load_region, min_on_triangle
from .report import check_chain, run_all, system_expectations
from .resgraph import (
    NFKind,
    check_exhaustive,
    check_random,
    counting_mult_bound,
    evaluate_nf,
    format_graph,
    parse_graph,
    path_counts,
    remove_arrows,
    sigma_groups,
)
from .sysmodel import instantiate, limit_system, load_system, relax_strict

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _instance(s, M):
    return relax_strict(limit_system(s) if M == "limit" else instantiate(s, M))


def _expected_infeasible(exp: int | None, M) -> bool:
    if exp is None:
        return False
    return True if M == "limit" else M >= exp


def _parse_M(text: str):
    if text == "limit":
        return "limit"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"M must be an integer or 'limit', got {text!r}") from None


# -- subcommands -------------------------------------------------------------------


def cmd_check(args) -> int:
    s = load_system(args.system)
    M = args.M
    if M != "limit" and not s.in_domain(M):
        raise FanoCertError(f"M={M} is outside the domain of {s.name}")
    _, _, exp_r, _ = system_expectations(s)
    lin = _instance(s, M)
    res = decide(lin)
    expected = "Infeasible" if _expected_infeasible(exp_r, M) else "Feasible"
    cert_path = None
    if not res.feasible:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        cert_path = out / f"{lin.name}_M{lin.M}.cert"
        cert_path.write_text(format_certificate(lin, res.cert))
    ok = res.status == expected
    text = f"{s.name} M={M}: {res.status} (expected {expected})\n"
    if cert_path:
        text += f"  certificate: {cert_path}\n"
    text += f"  [{s.meta.get('anchor', '')}]\n{'PASS' if ok else 'FAIL'}\n"
    _emit(args, text, {
        "system": s.name, "M": M, "status": res.status, "expected": expected,
        "anchor": s.meta.get("anchor", ""), "certificate": str(cert_path) if cert_path else None,
        "verdict": "PASS" if ok else "FAIL",
    })
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_scan(args) -> int:
    s = load_system(args.system)
    _, _, exp_r, _ = system_expectations(s)
    rep = scan_threshold(s, args.lo, args.hi)
    rows, bad = [], []
    for M in range(args.lo, args.hi + 1):
        relaxed = "Feasible" if rep.feasible[M] else "Infeasible"
        strict = "Feasible" if rep.feasible_strict[M] else "Infeasible"
        if (relaxed == "Infeasible") != _expected_infeasible(exp_r, M):
            bad.append(M)
        rows.append({"M": M, "relaxed": relaxed, "strict": strict})
    lines = [f"scan {s.name} M={args.lo}..{args.hi}", f"{'M':>5}  {'relaxed':<10}  strict"]
    lines += [f"{r['M']:>5}  {r['relaxed']:<10}  {r['strict']}" for r in rows]
    lines.append(f"relaxed infeasible from M={rep.minimal_infeasible_M}")
    lines.append(f"strict infeasible from M={rep.minimal_infeasible_M_strict}")
    lines.append(f"tail: {rep.tail_method}" + (f" ({rep.tail.reason})" if rep.tail.reason else ""))
    if bad:
        lines.append(f"mismatch with the catalog expectation at M={','.join(map(str, bad))}")
    lines.append("PASS" if not bad else "FAIL")
    _emit(args, "\n".join(lines) + "\n", {
        "system": s.name, "rows": rows,
        "minimal_infeasible_M": rep.minimal_infeasible_M,
        "minimal_infeasible_M_strict": rep.minimal_infeasible_M_strict,
        "tail": {"certified": rep.tail.certified, "method": rep.tail_method, "reason": rep.tail.reason},
        "mismatches": bad, "verdict": "PASS" if not bad else "FAIL",
    })
    return EXIT_OK if not bad else EXIT_MISMATCH


def cmd_verify_cert(args) -> int:
    cert = parse_certificate(Path(args.file).read_text())
    if not cert.system or cert.M is None:
        raise FanoCertError("certificate header must name a system and M")
    s = load_system(cert.system)
    lin = _instance(s, cert.M)
    ok = verify_certificate(lin, cert)
    verdict = "valid" if ok else "invalid"
    _emit(args, f"certificate for {cert.system} M={cert.M}: {verdict}\n",
          {"system": cert.system, "M": cert.M, "valid": ok})
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_minimize(args) -> int:
    obj = Objective(args.objective)
    path = Path(args.region)
    if path.is_file():
        region, expected = TriangleRegion.parse(path.read_text(), path.stem), None
    else:
        entry = load_region(args.region)
        region = entry.region
        expected = entry if entry.objective is obj else None
    m = min_on_triangle(obj, region)
    ok = m.verified
    if expected is not None:
        ok = ok and m.value == expected.expected_value and m.argmin == expected.expected_argmin
    text = m.format() + ("PASS\n" if ok else "FAIL\n")
    _emit(args, text, {
        "objective": obj.value, "region": str(region), "min": format_scalar(m.value),
        "argmin": [format_scalar(x) for x in m.argmin], "verified": m.verified,
        "witness": list(m.witness), "verdict": "PASS" if ok else "FAIL",
    })
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_chain(args) -> int:
    c = load_chain(args.name)
    rec = check_chain(args.name)
    f = chain_closed_form(c)
    th = threshold_M(c)
    lines = [f"chain {c.name}  [{c.anchor()}]", f"  closed form: {f}",
             f"  >= {c.comparison_bound} from M={th.first_ge}; > {c.comparison_bound} from M={th.first_gt}"]
    values = {}
    for M in args.M or []:
        values[M] = str(chain_value(c, M))
        lines.append(f"  value at M={M}: {values[M]}")
    lines += [f"  note: {n}" for n in rec.notes]
    lines.append(rec.status)
    _emit(args, "\n".join(lines) + "\n", {
        "chain": c.name, "closed_form": str(f), "first_ge": th.first_ge, "first_gt": th.first_gt,
        "values": {str(k): v for k, v in values.items()}, "verdict": rec.status,
    })
    return EXIT_OK if rec.status == "PASS" else EXIT_MISMATCH


def _graphs(spec: str):
    path = Path(spec)
    text = path.read_text() if path.is_file() else spec
    lines = [ln.partition("#")[0].strip() for ln in text.splitlines()]
    return [parse_graph(ln) for ln in lines if ln]


def cmd_graph(args) -> int:
    if args.graph_cmd == "corpus":
        ex = check_exhaustive(args.max_K)
        rnd = check_random(args.random, args.random_K, seed=args.seed)
        ok = ex.ok and rnd.ok
        text = (f"exhaustive K<={args.max_K}: {ex.graphs} graphs, {ex.removal_checked} removals, "
                f"{ex.dp_mismatches + ex.removal_violations + ex.inequality_violations} violations\n"
                f"random K<={args.random_K}: {rnd.graphs} graphs, "
                f"{rnd.dp_mismatches + rnd.removal_violations + rnd.inequality_violations} violations\n"
                + ("PASS\n" if ok else "FAIL\n"))
        _emit(args, text, {"exhaustive": ex.graphs, "random": rnd.graphs, "verdict": "PASS" if ok else "FAIL"})
        return EXIT_OK if ok else EXIT_MISMATCH
    out, payload = [], []
    for g in _graphs(args.graph):
        entry = {"graph": format_graph(g)}
        out.append(format_graph(g))
        if args.graph_cmd == "paths":
            p = path_counts(g)
            entry["paths"] = {str(k): v for k, v in p.items()}
            out.append("  p = " + ", ".join(f"p{k}={v}" for k, v in sorted(p.items())))
        elif args.graph_cmd == "remove":
            h = remove_arrows(g)
            ph = path_counts(h)
            entry["removed"] = format_graph(h)
            entry["paths"] = {str(k): v for k, v in ph.items()}
            out.append(f"  -> {format_graph(h)}")
            out.append("  p = " + ", ".join(f"p{k}={v}" for k, v in sorted(ph.items())))
        elif args.graph_cmd == "sigma":
            sg = sigma_groups(g)
            entry.update(sg.as_dict())
            out.append("  " + ", ".join(f"{k}={v}" for k, v in sg.as_dict().items()))
        elif args.graph_cmd == "nf":
            nu = [x.strip() for x in args.nu.split(",")]
            ev = evaluate_nf(g, nu, NFKind(args.kind))
            bound = counting_mult_bound(g, nu)
            entry.update(lhs=str(ev.lhs), rhs=str(ev.rhs), satisfied=ev.satisfied, counting=str(bound))
            out.append(f"  {ev.lhs} {'>' if ev.satisfied else '<='} {ev.rhs}; sum p nu^2 = {bound}")
        payload.append(entry)
    _emit(args, "\n".join(out) + "\n", {"graphs": payload})
    return EXIT_OK


def cmd_verify_all(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rep = run_all(out, jobs=args.jobs)
    body = rep.to_json() if args.format == "json" else rep.to_text()
    (out / ("report.json" if args.format == "json" else "report.txt")).write_text(body)
    sys.stdout.write(body)
    return EXIT_OK if rep.verdict == "PASS" else EXIT_MISMATCH


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanocert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fanocert {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="decide one system at one M")
    p.add_argument("system")
    p.add_argument("--M", type=_parse_M, required=True, help="integer or 'limit'")
    p.add_argument("--out", default="fanocert-out", help="directory for the certificate")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan", parents=[common], help="decide a system on a range of M")
    p.add_argument("system")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify-cert", parents=[common], help="check a certificate file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("minimize", parents=[common], help="exact minimum on a triangle")
    p.add_argument("objective", choices=[o.value for o in Objective])
    p.add_argument("region", help="shipped region name or a region file")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("chain", parents=[common], help="closed form and threshold of a chain")
    p.add_argument("name")
    p.add_argument("--M", type=int, action="append", help="also print the value at M")
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("graph", help="resolution graph utilities")
    gsub = p.add_subparsers(dest="graph_cmd", required=True)
    for name, help_ in (("paths", "path counts from E_K"), ("remove", "drop upper-part arrows into E_1"),
                        ("sigma", "path-count sums by discrepancy")):
        q = gsub.add_parser(name, parents=[common], help=help_)
        q.add_argument("graph", help="graph file or inline 'K=..; L=..; delta=..; arrows=..'")
    q = gsub.add_parser("nf", parents=[common], help="evaluate the Noether-Fano inequality")
    q.add_argument("graph")
    q.add_argument("--nu", required=True, help="comma separated multiplicities, E_1 first")
    q.add_argument("--kind", choices=[k.value for k in NFKind], default=NFKind.CANONICAL3.value)
    q = gsub.add_parser("corpus", parents=[common], help="exhaustive and random corpus checks")
    q.add_argument("--max-K", type=int, default=6)
    q.add_argument("--random", type=int, default=1000)
    q.add_argument("--random-K", type=int, default=12)
    q.add_argument("--seed", type=int, default=20131001)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("verify-all", parents=[common], help="run every shipped check")
    p.add_argument("--out", default="fanocert-out", help="directory for the report and certificates")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for the system scans")
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (FanoCertError, OSError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"fanocert: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
