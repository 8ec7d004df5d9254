"""Chains of exact lower-bound implications with rational constants.

A pipeline file holds one statement per line::

    assume l > 1;                       # hypothesis
    DP >= 2*l + 2/3*(2 - l) > 8/3;      # DP is at least the expression,
                                        # which exceeds 8/3 given the bounds

Each derived line names a quantity, its relation to an affine expression
of earlier quantities, and a claimed lower bound.  The step is valid when
every variable in the expression has a positive coefficient (so the
expression is increasing in the bounded quantities) and the expression
evaluated at the known bounds reaches the claim, strictly if the claim is
strict.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ..errors import SystemSyntaxError, UnknownPipeline
from ..sysmodel.catalog import data_dir

_ASSUME = re.compile(r"^assume\s+([A-Za-z_]\w*)\s*(>=|>)\s*(.+)$")
_STEP = re.compile(r"^([A-Za-z_]\w*)\s*(>=|>|=)\s*(.+?)\s*(>=|>)\s*([^<>=]+)$")


@dataclass(frozen=True)
class Step:
    name: str
    relation: str  # ">=", ">" or "=" between the quantity and the expression
    expr: str
    claim_relation: str  # ">" or ">="
    claim: Fraction
    note: str = ""
    assumption: bool = False


@dataclass(frozen=True)
class StepCheck:
    step: Step
    value: Fraction | None  # expression at the known bounds
    strict: bool
    valid: bool
    reason: str = ""


@dataclass(frozen=True)
class Pipeline:
    name: str
    steps: tuple
    meta: dict


def _parse_affine(text: str, known: list[str], line: int):
    """Affine form of ``text`` in the names in ``known``: (coeffs, const)."""
    from ..sysmodel.dsl import _Parser, _tokenize

    toks = _tokenize(text, line, 0)
    parser = _Parser(toks, line, set(known))
    form = parser.expr()
    if parser.peek().kind != "end":
        parser.error(f"unexpected {parser.peek().text!r}")
    if form.const.depends_on_M or any(k.depends_on_M for k in form.terms.values()):
        raise SystemSyntaxError("pipeline constants may not depend on M", line, 1)
    coeffs = {v: k.constant_value() for v, k in form.terms.items()}
    return coeffs, form.const.constant_value()


def parse_pipeline(text: str, name: str = "pipeline") -> Pipeline:
    steps, meta = [], {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#@"):
            key, _, value = stripped[2:].partition(":")
            meta[key.strip()] = value.strip()
            continue
        body, _, note = raw.partition("#")
        stmt = body.strip()
        if not stmt:
            continue
        if not stmt.endswith(";"):
            raise SystemSyntaxError("missing ';'", lineno, len(body.rstrip()) + 1)
        stmt = stmt[:-1].strip()
        m = _ASSUME.match(stmt)
        if m:
            claim = _parse_affine(m.group(3), [], lineno)[1]
            steps.append(Step(m.group(1), "", "", m.group(2), claim, note.strip(), True))
            continue
        m = _STEP.match(stmt)
        if not m:
            raise SystemSyntaxError("expected 'name REL expr REL bound'", lineno, 1)
        claim = _parse_affine(m.group(5), [], lineno)[1]
        steps.append(Step(m.group(1), m.group(2), m.group(3), m.group(4), claim, note.strip()))
    return Pipeline(meta.get("name", name), tuple(steps), meta)


def check_steps(p: Pipeline) -> list[StepCheck]:
    bounds: dict[str, tuple[Fraction, bool]] = {}
    out = []
    for i, st in enumerate(p.steps, start=1):
        if st.assumption:
            bounds[st.name] = (st.claim, st.claim_relation == ">")
            out.append(StepCheck(st, st.claim, st.claim_relation == ">", True, "hypothesis"))
            continue
        coeffs, const = _parse_affine(st.expr, list(bounds), i)
        value = const
        strict = st.relation == ">"
        bad = [v for v, k in coeffs.items() if k < 0]
        if bad:
            out.append(StepCheck(st, None, False, False, f"negative coefficient on {', '.join(bad)}"))
            bounds[st.name] = (st.claim, st.claim_relation == ">")
            continue
        for v, k in coeffs.items():
            if k == 0:
                continue
            lb, s = bounds[v]
            value += k * lb
            strict = strict or s
        if st.claim_relation == ">":
            ok = value > st.claim or (value == st.claim and strict)
        else:
            ok = value >= st.claim
        reason = "" if ok else f"expression bound {value} does not give {st.claim_relation} {st.claim}"
        out.append(StepCheck(st, value, strict, ok, reason))
        bounds[st.name] = (st.claim, st.claim_relation == ">")
    return out


def pipeline_path(name: str) -> Path:
    return data_dir() / "pipelines" / f"{name}.pl"


def pipeline_names() -> list[str]:
    return sorted(p.stem for p in (data_dir() / "pipelines").glob("*.pl"))


def load_pipeline(name: str) -> Pipeline:
    path = pipeline_path(name)
    if not path.is_file():
        raise UnknownPipeline(name)
    return parse_pipeline(path.read_text(), name)


def check_bound_pipeline(pipeline_id: str | Pipeline) -> bool:
    p = load_pipeline(pipeline_id) if isinstance(pipeline_id, str) else pipeline_id
    return all(c.valid for c in check_steps(p))
