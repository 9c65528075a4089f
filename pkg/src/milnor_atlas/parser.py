"""Recursive-descent parser for the polynomial text grammar.

Grammar (whitespace insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | NUMBER 'i' | 'i' | VARIABLE | '(' expr ')'

Variables are ``z1`` .. ``z9`` or ``z{k}`` for any k >= 1.  Numbers are
integers or decimals and are read exactly; ``a/b`` parses as a division, which
is only allowed by a nonzero constant.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exact import GaussianRational
from .exceptions import ParseError

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d*)?|\.\d+)(?P<imag>i(?![A-Za-z0-9_{]))?
  | (?P<var>z(?:\{\s*(?P<braced>\d+)\s*\}|(?P<digit>\d)))
  | (?P<unit>i(?![A-Za-z0-9_{]))
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    line: int
    column: int


def _position(text: str, offset: int):
    line = text.count("\n", 0, offset) + 1
    start = text.rfind("\n", 0, offset) + 1
    return line, offset - start + 1


def tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            line, col = _position(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        line, col = _position(text, pos)
        if m.group("number") is not None:
            value = Fraction(m.group("number"))
            kind = "imag" if m.group("imag") else "number"
            tokens.append(Token(kind, value, line, col))
        elif m.group("var") is not None:
            index = int(m.group("braced") or m.group("digit"))
            if index < 1:
                raise ParseError("variable indices start at 1", line, col)
            tokens.append(Token("var", index, line, col))
        elif m.group("unit") is not None:
            tokens.append(Token("imag", 1, line, col))
        elif m.group("op") is not None:
            tokens.append(Token(m.group("op"), m.group("op"), line, col))
        pos = m.end()
    line, col = _position(text, len(text))
    tokens.append(Token("eof", None, line, col))
    return tokens


class _Parser:
    def __init__(self, text, n_vars, poly_cls):
        self.tokens = tokenize(text)
        self.pos = 0
        self.n_vars = n_vars
        self.poly_cls = poly_cls

    @property
    def current(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.current
        raise ParseError(message, tok.line, tok.column)

    def parse(self):
        if self.current.kind == "eof":
            self.fail("empty polynomial")
        result = self.expr()
        if self.current.kind != "eof":
            self.fail(f"unexpected token {self.current.value!r}")
        return result

    def expr(self):
        left = self.term()
        while self.current.kind in ("+", "-"):
            op = self.advance().kind
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self):
        left = self.factor()
        while self.current.kind in ("*", "/"):
            op_tok = self.advance()
            right = self.factor()
            if op_tok.kind == "*":
                left = left * right
            else:
                if right.degree() > 0 or right.is_zero():
                    self.fail("division is only allowed by a nonzero constant", op_tok)
                left = left * self.poly_cls.constant(
                    GaussianRational(1) / right.constant_term(), left.n_vars
                )
        return left

    def factor(self):
        if self.current.kind == "-":
            self.advance()
            return -self.factor()
        if self.current.kind == "+":
            self.advance()
            return self.factor()
        return self.power()

    def power(self):
        base = self.atom()
        if self.current.kind == "^":
            self.advance()
            tok = self.current
            if tok.kind != "number" or tok.value.denominator != 1:
                self.fail("exponent must be a non-negative integer literal")
            self.advance()
            return base ** int(tok.value)
        return base

    def atom(self):
        tok = self.current
        P = self.poly_cls
        if tok.kind == "number":
            self.advance()
            return P.constant(GaussianRational(tok.value), self.n_vars)
        if tok.kind == "imag":
            self.advance()
            return P.constant(GaussianRational(0, tok.value), self.n_vars)
        if tok.kind == "var":
            self.advance()
            if tok.value > self.n_vars:
                self.fail(f"variable z{tok.value} exceeds n_vars={self.n_vars}", tok)
            return P.variable(tok.value - 1, self.n_vars)
        if tok.kind == "(":
            self.advance()
            inner = self.expr()
            if self.current.kind != ")":
                self.fail("expected ')'")
            self.advance()
            return inner
        if tok.kind == "eof":
            self.fail("unexpected end of input")
        self.fail(f"unexpected token {tok.value!r}")


def max_variable_index(text: str) -> int:
    return max((t.value for t in tokenize(text) if t.kind == "var"), default=0)


def parse_polynomial(text: str, n_vars: int | None = None, poly_cls=None):
    """Parse ``text`` into a polynomial in ``n_vars`` variables.

    When ``n_vars`` is omitted the largest variable index that occurs is used
    (at least 1).
    """
    if poly_cls is None:
        from .polynomial import Polynomial as poly_cls
    if n_vars is None:
        n_vars = max(1, max_variable_index(text))
    return _Parser(text, n_vars, poly_cls).parse()
