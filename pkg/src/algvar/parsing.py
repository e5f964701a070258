"""Tokenizer and expression parser shared by all text formats."""

from __future__ import annotations

import re
from fractions import Fraction

from .scalars import ONE, ZERO, Poly, Relation, Scalar, ScalarError, as_scalar


class ParseError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{message}{where}")


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>!=|<=|[-+*/^()\[\],=;:])
    """,
    re.VERBOSE,
)


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.col})"


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def split_statements(tokens: list[Token]) -> list[list[Token]]:
    """Split on ';', dropping empty statements."""
    stmts, cur = [], []
    for tok in tokens:
        if tok.kind == "eof":
            break
        if tok.text == ";":
            if cur:
                stmts.append(cur)
            cur = []
        else:
            cur.append(tok)
    if cur:
        raise ParseError("missing ';' after statement", cur[-1].line, cur[-1].col)
    return stmts


class Linear:
    """Formal linear combination of labelled objects (basis vectors, D[i,j], c[i,j,k])."""

    __slots__ = ("kind", "coeffs")

    def __init__(self, kind, coeffs):
        self.kind = kind
        self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, ZERO) + v
        return Linear(self.kind, out)

    def scale(self, s):
        return Linear(self.kind, {k: v * s for k, v in self.coeffs.items()})


class ExprParser:
    """Recursive-descent parser over a token slice.

    ``resolve(name, parser)`` turns identifiers into values; by default every
    name is a free parameter.
    """

    def __init__(self, tokens, resolve=None, allowed=None):
        self.toks = list(tokens)
        if not self.toks or self.toks[-1].kind != "eof":
            last = self.toks[-1] if self.toks else Token("eof", "", 1, 1)
            self.toks.append(Token("eof", "", last.line, last.col + len(last.text)))
        self.i = 0
        self.resolve = resolve
        self.allowed = allowed

    # token helpers
    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text):
        tok = self.next()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, tok.line, tok.col)

    def at_end(self):
        return self.peek().kind == "eof"

    # grammar
    def parse_full(self):
        value = self.expr()
        if not self.at_end():
            raise self.error(f"unexpected {self.peek().text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.next()
            rhs = self.term()
            value = self._add(value, rhs if op.text == "+" else self._neg(rhs), op)
        return value

    def term(self):
        value = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.next()
            rhs = self.unary()
            value = self._mul(value, rhs, op) if op.text == "*" else self._div(value, rhs, op)
        return value

    def unary(self):
        if self.peek().text == "-":
            self.next()
            return self._neg(self.unary())
        if self.peek().text == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().text == "^":
            op = self.next()
            sign = 1
            if self.peek().text == "-":
                self.next()
                sign = -1
            tok = self.next()
            if tok.kind != "num":
                raise ParseError("exponent must be an integer literal", tok.line, tok.col)
            if not isinstance(base, Scalar):
                raise ParseError("only scalars can be raised to a power", op.line, op.col)
            try:
                return base ** (sign * int(tok.text))
            except ScalarError as exc:
                raise ParseError(str(exc), op.line, op.col) from None
        return base

    def atom(self):
        tok = self.next()
        if tok.kind == "num":
            return as_scalar(int(tok.text))
        if tok.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "name":
            if self.resolve is not None:
                return self.resolve(tok, self)
            return Scalar.var(tok.text)
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.line, tok.col)

    def int_index(self):
        tok = self.next()
        if tok.kind != "num":
            raise ParseError("expected an integer index", tok.line, tok.col)
        return int(tok.text)

    # value algebra
    @staticmethod
    def _neg(v):
        return -v if isinstance(v, Scalar) else v.scale(-ONE)

    def _add(self, a, b, op):
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a + b
        if isinstance(a, Scalar):
            a, b = b, a
        if isinstance(b, Scalar):
            if b.is_zero():
                return a
            raise ParseError("cannot add a scalar to a linear combination", op.line, op.col)
        if a.kind != b.kind:
            raise ParseError("incompatible terms in sum", op.line, op.col)
        return a + b

    def _mul(self, a, b, op):
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a * b
        if isinstance(a, Scalar):
            return b.scale(a)
        if isinstance(b, Scalar):
            return a.scale(b)
        raise ParseError("product of two non-scalar terms", op.line, op.col)

    def _div(self, a, b, op):
        if not isinstance(b, Scalar):
            raise ParseError("division by a non-scalar", op.line, op.col)
        if b.is_zero():
            raise ParseError("division by zero polynomial", op.line, op.col)
        if isinstance(a, Scalar):
            return a / b
        return a.scale(b.inverse())


def parse_scalar(text: str) -> Scalar:
    """Parse a rational function such as ``(a^2-1)/(2*a)``."""
    value = ExprParser(tokenize(text)).parse_full()
    if not isinstance(value, Scalar):
        raise ParseError("expected a scalar expression")
    return value


def parse_params(tokens: list[Token]):
    """Parse ``a (a != 0), r (r^2 = a)`` into ParameterDecls."""
    from .scalars import ParameterDecl

    decls = []
    p = ExprParser(tokens)
    while not p.at_end():
        tok = p.next()
        if tok.kind != "name":
            raise ParseError("expected a parameter name", tok.line, tok.col)
        name, constraints, relation = tok.text, [], None
        if p.peek().text == "(":
            p.next()
            while True:
                lhs = p.expr()
                op = p.next()
                rhs = p.expr()
                if op.text == "!=":
                    diff = _as_scalar_value(lhs, op) - _as_scalar_value(rhs, op)
                    if diff.is_zero():
                        raise ParseError("constraint is identically zero", op.line, op.col)
                    constraints.append(diff.num.monic())
                elif op.text == "=":
                    relation = _relation_from(name, lhs, rhs, op)
                else:
                    raise ParseError("expected '!=' or '='", op.line, op.col)
                sep = p.next()
                if sep.text == ")":
                    break
                if sep.text != ",":
                    raise ParseError("expected ',' or ')'", sep.line, sep.col)
        decls.append(ParameterDecl(name, tuple(constraints), relation))
        if p.at_end():
            break
        p.expect(",")
    return decls


def _as_scalar_value(v, tok):
    if not isinstance(v, Scalar):
        raise ParseError("expected a scalar expression", tok.line, tok.col)
    return v


def _relation_from(name, lhs, rhs, op):
    lhs = _as_scalar_value(lhs, op)
    rhs = _as_scalar_value(rhs, op)
    if not (lhs.is_polynomial() and len(lhs.num.terms) == 1 and lhs.num.gens == (name,)):
        raise ParseError(f"relation must have the form {name}^k = expr", op.line, op.col)
    (exp, coeff), = lhs.num.terms.items()
    if coeff != 1 or not rhs.is_polynomial():
        raise ParseError("relation must be monic with a polynomial right-hand side", op.line, op.col)
    try:
        return Relation(name, exp[0], rhs.num)
    except ValueError as exc:
        raise ParseError(str(exc), op.line, op.col) from None


def as_fraction(s: Scalar) -> Fraction:
    return s.to_fraction()


def poly_of(s: Scalar) -> Poly:
    if not s.is_polynomial():
        raise ValueError(f"{s} is not a polynomial")
    return s.num
