"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr     := sign? term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nat)?
    base     := rational | identifier | '(' expr ')'
    rational := int ('/' nat)?

Multiplication must be written explicitly; ``x1x2`` is one (unknown)
identifier, not a product.  Identifiers must be declared in the context.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Polynomial, VariableContext


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int) -> None:
        super().__init__(f"{message} at position {pos}: {text[:pos]!s}<<>>{text[pos:]!s}")
        self.message = message
        self.text = text
        self.pos = pos


class UnknownIdentifier(ParseError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: VariableContext) -> None:
        self.text = text
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", self.text, pos)

    def at_op(self, *ops: str) -> bool:
        kind, val, _ = self.peek()
        return kind == "op" and val in ops

    def parse(self) -> Polynomial:
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", self.text, pos)
        return value

    def expr(self) -> Polynomial:
        negate = False
        if self.at_op("+", "-"):
            negate = self.take()[1] == "-"
        value = self.term()
        if negate:
            value = -value
        while self.at_op("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.factor()
        while self.at_op("*"):
            self.take()
            value = value * self.factor()
        return value

    def factor(self) -> Polynomial:
        value = self.base()
        if self.at_op("^"):
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", self.text, pos)
            value = value ** int(val)
        return value

    def base(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "int":
            num = int(val)
            if self.at_op("/"):
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "int":
                    raise ParseError("expected denominator after '/'", self.text, p2)
                if int(v2) == 0:
                    raise ParseError("zero denominator", self.text, p2)
                return self.ctx.const(Fraction(num, int(v2)))
            return self.ctx.const(num)
        if kind == "name":
            if val not in self.ctx:
                raise UnknownIdentifier(f"unknown identifier {val!r}", self.text, pos)
            return self.ctx.var(val)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        raise ParseError(f"unexpected {val or 'end of input'!r}", self.text, pos)


def parse_expression(text: str, ctx: VariableContext) -> Polynomial:
    return _Parser(text, ctx).parse()
