"""Input language for rational expressions in n and x: a recursive-descent
parser producing a small AST, an exact evaluator into the library domains,
and a canonical printer satisfying the round-trip law
lower(parse_expr(format_expr(v))) == v.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq, mpz

from .bivar import XPoly, XRat
from .errors import (DivisionByZeroExpr, DomainError, DomainMismatch,
                     ExprSyntaxError, UnknownVariable)
from .poly import QPoly, QRat


@dataclass(frozen=True)
class ExprAst:
    kind: str           # int, var, add, sub, mul, div, neg, pow
    value: object = None
    left: "ExprAst | None" = None
    right: "ExprAst | None" = None


# -- tokenizer ---------------------------------------------------------------

_PUNCT = set("+-*/^()")


def _tokens(src: str):
    out = []
    i, m = 0, len(src)
    while i < m:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _PUNCT:
            out.append((ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < m and src[j].isdigit():
                j += 1
            out.append(("INT", i, src[i:j]))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < m and (src[j].isalnum() or src[j] == "_"):
                j += 1
            name = src[i:j]
            if name not in ("n", "x"):
                raise UnknownVariable(
                    f"unknown variable {name!r} at offset {i}")
            out.append(("VAR", i, name))
            i = j
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", offset=i)
    out.append(("END", m))
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokens(src)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, what):
        t = self.peek()
        raise ExprSyntaxError(f"expected {what}", offset=t[1])

    def expr(self) -> ExprAst:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            node = ExprAst("add" if op == "+" else "sub",
                           left=node, right=rhs)
        return node

    def term(self) -> ExprAst:
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.factor()
            node = ExprAst("mul" if op == "*" else "div",
                           left=node, right=rhs)
        return node

    def factor(self) -> ExprAst:
        if self.peek()[0] == "-":
            self.take()
            return ExprAst("neg", left=self.factor())
        node = self.base()
        if self.peek()[0] == "^":
            self.take()
            sign = 1
            if self.peek()[0] == "-":
                self.take()
                sign = -1
            t = self.peek()
            if t[0] != "INT":
                self.fail("integer exponent")
            self.take()
            node = ExprAst("pow", value=sign * int(t[2]), left=node)
        return node

    def base(self) -> ExprAst:
        t = self.peek()
        if t[0] == "INT":
            self.take()
            return ExprAst("int", value=mpz(t[2]))
        if t[0] == "VAR":
            self.take()
            return ExprAst("var", value=t[2])
        if t[0] == "(":
            self.take()
            node = self.expr()
            if self.peek()[0] != ")":
                self.fail("')'")
            self.take()
            return node
        self.fail("a number, variable or '('")


def parse_expr(src: str) -> ExprAst:
    p = _Parser(src)
    node = p.expr()
    t = p.peek()
    if t[0] != "END":
        raise ExprSyntaxError("trailing input", offset=t[1])
    return node


# -- lowering ----------------------------------------------------------------

_N = XRat(XPoly.const(QPoly.var()), None, _reduced=True)
_X = XRat(XPoly.var(), None, _reduced=True)


def _eval(ast: ExprAst) -> XRat:
    k = ast.kind
    if k == "int":
        return XRat(XPoly.const(mpq(ast.value)), None, _reduced=True)
    if k == "var":
        return _N if ast.value == "n" else _X
    if k == "neg":
        return _eval(ast.left) * -1
    if k == "add":
        return _eval(ast.left) + _eval(ast.right)
    if k == "sub":
        return _eval(ast.left) - _eval(ast.right)
    if k == "mul":
        return _eval(ast.left) * _eval(ast.right)
    if k == "div":
        den = _eval(ast.right)
        if den.is_zero():
            raise DivisionByZeroExpr("division by zero in expression")
        return _eval(ast.left) * den.inverse()
    if k == "pow":
        base = _eval(ast.left)
        e = ast.value
        if e < 0:
            if base.is_zero():
                raise DivisionByZeroExpr("zero raised to a negative power")
            base = base.inverse()
            e = -e
        out = XRat(XPoly.one(), None, _reduced=True)
        for _ in range(e):
            out = out * base
        return out
    raise DomainError(f"unknown AST node {k!r}")


def lower(ast: ExprAst, target: str):
    """Exact evaluation into one of the domains ``xrat`` (rational in n and
    x), ``xpoly`` (polynomial in x over Q(n)), ``ratfn`` (rational in x
    alone) or ``nrat`` (rational in n alone)."""
    v = _eval(ast)
    if target == "xrat":
        return v
    if target == "xpoly":
        if not v.den.is_one():
            raise DomainMismatch("expression is not polynomial in x")
        return v.num
    if target == "ratfn":
        if not (v.num.is_n_free() and v.den.is_n_free()):
            raise DomainMismatch("expression must not contain n")
        return QRat(v.num.to_x_poly(), v.den.to_x_poly())
    if target == "nrat":
        if v.num.degree > 0 or v.den.degree > 0:
            raise DomainMismatch("expression must not contain x")
        num = v.num.coeff(0) if not v.num.is_zero() else QRat.const(0)
        den = v.den.coeff(0)
        return num * den.inverse()
    raise DomainError(f"unknown lowering target {target!r}")


# -- printing ----------------------------------------------------------------

def _fmt_q(c) -> str:
    c = mpq(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _fmt_qpoly(p: QPoly, var: str) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(int(p.degree), -1, -1):
        c = p.coeff(k)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = _fmt_q(a)
        else:
            v = var if k == 1 else f"{var}^{k}"
            body = v if a == 1 else f"{_fmt_q(a)}*{v}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


def _fmt_qrat(v: QRat, var: str) -> str:
    if v.den.degree == 0 and v.den.coeff(0) == 1:
        return _fmt_qpoly(v.num, var)
    num = _fmt_qpoly(v.num, var)
    den = _fmt_qpoly(v.den, var)
    return f"({num})/({den})"


def _fmt_xpoly(p: XPoly, nvar: str = "n", xvar: str = "x") -> str:
    if p.is_zero():
        return "0"
    if p.is_n_free():
        return _fmt_qpoly(p.to_x_poly(), xvar)
    parts = []
    for k in range(int(p.degree), -1, -1):
        c = p.coeff(k)
        if c.is_zero():
            continue
        cs = _fmt_qrat(c, nvar)
        if k == 0:
            body = f"({cs})" if _needs_parens(cs) else cs
        else:
            v = xvar if k == 1 else f"{xvar}^{k}"
            if cs == "1":
                body = v
            elif cs == "-1":
                body = f"-{v}"
            else:
                body = (f"({cs})*{v}" if _needs_parens(cs) else f"{cs}*{v}")
        parts.append(body)
    out = parts[0]
    for b in parts[1:]:
        out += b if b.startswith("-") else "+" + b
    return out


def _needs_parens(s: str) -> bool:
    if s.startswith("-"):
        return True
    depth = 0
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-*/":
            return True
    return False


def format_expr(value, var: str = "x") -> str:
    """Canonical text for a library value; parse_expr + lower maps it back
    to the identical value.  ``var`` names the variable of univariate
    values (QPoly, QRat)."""
    if isinstance(value, (int, mpz, mpq)):
        return _fmt_q(value)
    if isinstance(value, QPoly):
        return _fmt_qpoly(value, var)
    if isinstance(value, QRat):
        return _fmt_qrat(value, var)
    if isinstance(value, XPoly):
        return _fmt_xpoly(value)
    if isinstance(value, XRat):
        if value.den.is_one():
            return _fmt_xpoly(value.num)
        num = _fmt_xpoly(value.num)
        den = _fmt_xpoly(value.den)
        return f"({num})/({den})"
    raise DomainError(f"cannot format {type(value).__name__}")
