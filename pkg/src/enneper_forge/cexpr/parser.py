"""Recursive-descent parser for the expression grammar.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | power
    power  := atom ('^' int)?
    atom   := number | 'i' | 'z' | ident '(' expr ')' | '(' expr ')'

Exponents are bare, optionally signed integer literals (``z^-2``).  A
parenthesized exponent such as ``z^(-2)`` is rejected.
"""
from __future__ import annotations

import re
from typing import NamedTuple

from ..errors import ExpressionSyntaxError
from .nodes import FUNCTIONS, Add, Call, CExpr, Const, Div, Mul, Neg, Pow, Sub, Var


class Token(NamedTuple):
    kind: str
    text: str
    offset: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ExpressionSyntaxError(message, tok.offset, self.text)

    def take(self) -> Token:
        tok = self.tok
        self.pos += 1
        return tok

    def accept(self, op) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.pos += 1
            return True
        return False

    def expect(self, op):
        if not self.accept(op):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {op!r}, found {found!r}")

    def parse(self) -> CExpr:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self):
        e = self.term()
        while True:
            if self.accept("+"):
                e = Add(e, self.term())
            elif self.accept("-"):
                e = Sub(e, self.term())
            else:
                return e

    def term(self):
        e = self.factor()
        while True:
            if self.accept("*"):
                e = Mul(e, self.factor())
            elif self.accept("/"):
                e = Div(e, self.factor())
            else:
                return e

    def factor(self):
        if self.accept("-"):
            return Neg(self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        if not self.accept("^"):
            return base
        start = self.tok
        sign = 1
        if self.tok.kind == "op" and self.tok.text in "+-":
            sign = -1 if self.take().text == "-" else 1
        tok = self.tok
        if tok.kind == "number":
            if not tok.text.isdigit():
                raise self.error("non-integer exponent", tok)
            self.pos += 1
            return Pow(base, sign * int(tok.text))
        if tok.kind == "op" and tok.text == "(":
            raise self.error("exponent must be a bare signed integer", tok)
        raise self.error("expected integer exponent", start)

    def atom(self):
        tok = self.tok
        if tok.kind == "number":
            self.pos += 1
            return Const(float(tok.text))
        if tok.kind == "name":
            self.pos += 1
            if tok.text == "z":
                return Var()
            if tok.text == "i":
                return Const(1j)
            if tok.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(tok.text, arg)
            raise self.error(f"unknown identifier {tok.text!r}", tok)
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}", tok)


def parse(text: str) -> CExpr:
    """Parse ``text`` into an expression tree.

    Raises ExpressionSyntaxError carrying the offset of the offending token.
    """
    if not text.isascii():
        bad = next(k for k, ch in enumerate(text) if not ch.isascii())
        raise ExpressionSyntaxError("non-ASCII character", bad, text)
    return _Parser(text).parse()
