"""Text format for parametric linear systems.

Grammar, one statement per line::

    param M in [4, inf);
    var d0 >= 0;            # nonnegative
    var t;                  # free
    d0 + d1 = 4;            # trailing comment becomes the row note
    m0 <= max(3, 8*M/(3*(M-2)))*d0;
    m0 + m1 + l1 > 10 + 2*sqrt2;

Lines starting with ``#@ key: value`` are metadata pragmas (name, anchor,
expected thresholds).  Other ``#`` comments are ignored.  Expressions may
use integers, ``+ - * /``, ``^`` with an integer exponent, parentheses, the
symbols ``M`` and ``sqrt2``, ``max(...)`` and declared variables; the
result must be linear in the variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..coeff import Coeff, Lin, Max, Scaled, const, param
from ..errors import SystemSyntaxError, UndeclaredVariable, ZeroRowConstraint
from .model import Constraint, ParametricSystem, Relation, Variable

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<rel><=|>=|<|>|=)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(src: str, line: int, col0: int) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise SystemSyntaxError(f"unexpected character {src[pos]!r}", line, col0 + pos + 1)
        if m.lastgroup != "ws":
            out.append(_Tok(m.lastgroup, m.group(), col0 + pos + 1))
        pos = m.end()
    out.append(_Tok("end", "", col0 + len(src) + 1))
    return out


class _Form:
    """Linear form: variable -> Coeff plus a constant Coeff."""

    __slots__ = ("terms", "const")

    def __init__(self, terms=None, constant=None):
        self.terms = dict(terms or {})
        self.const = constant if constant is not None else const(0)

    @property
    def is_constant(self) -> bool:
        return not self.terms

    def add(self, other: _Form, sgn: int = 1) -> _Form:
        terms = dict(self.terms)
        for v, k in other.terms.items():
            k = k if sgn > 0 else -k
            terms[v] = terms[v] + k if v in terms else k
        c = self.const + other.const if sgn > 0 else self.const - other.const
        return _Form(terms, c)

    def scale(self, k: Coeff) -> _Form:
        return _Form({v: c * k for v, c in self.terms.items()}, self.const * k)


class _Parser:
    def __init__(self, toks, line, declared):
        self.toks = toks
        self.i = 0
        self.line = line
        self.declared = declared

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise SystemSyntaxError(msg, self.line, tok.col)

    def expect(self, text):
        t = self.next()
        if t.text != text:
            self.error(f"expected {text!r}, found {t.text or 'end of line'!r}", t)
        return t

    # expr := term (('+'|'-') term)*
    def expr(self) -> _Form:
        f = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next().text
            g = self.term()
            f = f.add(g, 1 if op == "+" else -1)
        return f

    # term := unary (('*'|'/') unary)*
    def term(self) -> _Form:
        f = self.unary()
        while self.peek().text in ("*", "/"):
            op_tok = self.next()
            g = self.unary()
            if op_tok.text == "*":
                if f.is_constant:
                    f = g.scale(f.const)
                elif g.is_constant:
                    f = f.scale(g.const)
                else:
                    self.error("product of two variable expressions is not linear", op_tok)
            else:
                if not g.is_constant:
                    self.error("division by a variable expression", op_tok)
                try:
                    f = f.scale(const(1) / g.const)
                except (TypeError, ZeroDivisionError) as exc:
                    self.error(str(exc), op_tok)
        return f

    def unary(self) -> _Form:
        if self.peek().text == "-":
            self.next()
            return self.unary().scale(const(-1))
        if self.peek().text == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> _Form:
        base = self.atom()
        if self.peek().text == "^":
            op_tok = self.next()
            e = self.next()
            if e.kind != "num":
                self.error("exponent must be a nonnegative integer", e)
            if not base.is_constant or not isinstance(base.const, Lin):
                self.error("only parameter expressions can be raised to a power", op_tok)
            out = const(1)
            for _ in range(int(e.text)):
                out = out * base.const
            return _Form(constant=out)
        return base

    def atom(self) -> _Form:
        t = self.next()
        if t.kind == "num":
            return _Form(constant=const(int(t.text)))
        if t.text == "(":
            f = self.expr()
            self.expect(")")
            return f
        if t.kind == "name":
            if t.text == "M":
                return _Form(constant=param())
            if t.text == "sqrt2":
                return _Form(constant=const(0) + _sqrt2())
            if t.text == "max":
                self.expect("(")
                args = [self.expr()]
                while self.peek().text == ",":
                    self.next()
                    args.append(self.expr())
                self.expect(")")
                if len(args) < 2:
                    self.error("max needs at least two arguments", t)
                if any(not a.is_constant for a in args):
                    self.error("max(...) may not contain variables", t)
                return _Form(constant=Max([a.const for a in args]))
            if t.text not in self.declared:
                raise UndeclaredVariable(t.text, self.line)
            return _Form({t.text: const(1)})
        self.error(f"unexpected {t.text or 'end of line'!r}", t)


def _sqrt2() -> Lin:
    from ..rfunc import ParamCoeff

    return Lin(ParamCoeff.const(0), ParamCoeff.const(1))


_PARAM_RE = re.compile(r"^param\s+M\s+in\s+\[\s*(-?\d+)\s*,\s*(inf|-?\d+)\s*([)\]])\s*;$")
_VAR_RE = re.compile(r"^var\s+([A-Za-z_][A-Za-z_0-9]*)\s*(>=\s*0)?\s*;$")


def _split_comment(raw: str) -> tuple[str, str]:
    if "#" in raw:
        i = raw.index("#")
        return raw[:i], raw[i + 1:].strip()
    return raw, ""


def _statements(body: str, lineno: int):
    """Split a line into ``;``-terminated statements with their columns."""
    pos = 0
    while pos < len(body):
        end = body.find(";", pos)
        chunk = body[pos:] if end < 0 else body[pos:end + 1]
        stmt = chunk.strip()
        if stmt:
            col0 = pos + len(chunk) - len(chunk.lstrip())
            if end < 0:
                raise SystemSyntaxError("missing ';'", lineno, col0 + len(stmt) + 1)
            yield col0, stmt
        if end < 0:
            break
        pos = end + 1


def parse_system(text: str, name: str | None = None) -> ParametricSystem:
    meta: dict[str, object] = {}
    variables: list[Variable] = []
    declared: set[str] = set()
    constraints: list[Constraint] = []
    m_lo = m_hi = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("#@"):
            key, _, value = stripped[2:].partition(":")
            key = key.strip()
            value = value.strip()
            if key == "expect":
                meta.setdefault("expect", []).append(value)
            else:
                meta[key] = value
            continue
        body, note = _split_comment(raw)
        if not body.strip():
            continue
        for col0, stmt in _statements(body, lineno):
            if stmt.startswith("param"):
                m = _PARAM_RE.match(stmt)
                if not m:
                    raise SystemSyntaxError("malformed param header", lineno, col0 + 1)
                m_lo = int(m.group(1))
                if m.group(2) != "inf":
                    m_hi = int(m.group(2)) - (1 if m.group(3) == ")" else 0)
                continue
            if re.match(r"var\b", stmt):
                m = _VAR_RE.match(stmt)
                if not m:
                    raise SystemSyntaxError("malformed variable declaration", lineno, col0 + 1)
                vname = m.group(1)
                if vname in declared or vname in ("M", "sqrt2", "max"):
                    raise SystemSyntaxError(f"cannot declare {vname!r}", lineno, col0 + 1)
                declared.add(vname)
                variables.append(Variable(vname, m.group(2) is not None))
                continue
            toks = _tokenize(stmt[:-1], lineno, col0)
            rels = [t for t in toks if t.kind == "rel"]
            if len(rels) != 1:
                tok = rels[1] if len(rels) > 1 else toks[-1]
                raise SystemSyntaxError("expected exactly one relation", lineno, tok.col)
            k = toks.index(rels[0])
            lhs = _Parser(toks[:k] + [_Tok("end", "", rels[0].col)], lineno, declared)
            lf = lhs.expr()
            if lhs.peek().kind != "end":
                lhs.error(f"unexpected {lhs.peek().text!r}")
            rhs = _Parser(toks[k + 1:], lineno, declared)
            rf = rhs.expr()
            if rhs.peek().kind != "end":
                rhs.error(f"unexpected {rhs.peek().text!r}")
            form = lf.add(rf, -1)
            order = {v.name: i for i, v in enumerate(variables)}
            coeffs = tuple(
                (v, c) for v, c in sorted(form.terms.items(), key=lambda kv: order[kv[0]]) if not c.is_zero()
            )
            cid = f"r{len(constraints) + 1}"
            if not coeffs:
                raise ZeroRowConstraint(f"line {lineno}: constraint has no variable term")
            constraints.append(Constraint(cid, coeffs, Relation(rels[0].text), -form.const, note))
    sys_name = name or str(meta.get("name", "system"))
    return ParametricSystem(sys_name, tuple(variables), tuple(constraints), m_lo, m_hi, meta)


# -- printing --------------------------------------------------------------


def _negative_looking(k: Coeff) -> bool:
    if isinstance(k, Lin):
        if k.q.is_zero():
            return k.p.num[-1] < 0
        s = k.constant_sign()
        return s is not None and s < 0
    if isinstance(k, Scaled):
        s = k.k.constant_sign()
        return s is not None and s < 0
    return False


def _term(k: Coeff, var: str) -> str:
    if k == const(1):
        return var
    text = str(k)
    if isinstance(k, Lin) and k.is_constant and " " not in text:
        return f"{text}*{var}"
    if isinstance(k, Max):
        return f"{text}*{var}"
    return f"({text})*{var}"


def format_constraint(c: Constraint) -> str:
    parts = []
    for v, k in c.coeffs:
        neg = _negative_looking(k)
        body = _term(-k if neg else k, v)
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return f"{' '.join(parts)} {c.relation.value} {c.rhs};"


def format_system(s: ParametricSystem) -> str:
    """Canonical text: pragmas, header, declarations, rows in order."""
    lines = []
    for key in sorted(s.meta):
        value = s.meta[key]
        for item in value if isinstance(value, list) else [value]:
            lines.append(f"#@ {key}: {item}")
    if s.m_lo is not None:
        hi = "inf)" if s.m_hi is None else f"{s.m_hi}]"
        lines.append(f"param M in [{s.m_lo}, {hi};")
    for v in s.variables:
        lines.append(f"var {v.name}{' >= 0' if v.nonneg else ''};")
    for c in s.constraints:
        row = format_constraint(c)
        lines.append(f"{row}  # {c.note}" if c.note else row)
    return "\n".join(lines) + "\n"
