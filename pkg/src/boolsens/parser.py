"""Boolean expression front end.

Grammar: variables ``x1 .. xn``, constants ``0`` and ``1``, parentheses,
prefix ``!`` and the binary operators ``&``, ``^``, ``|``.  Binding strength
is ``!`` > ``&`` > ``^`` > ``|``; binary operators are left-associative.
The expression is evaluated on all ``2**n`` assignments at once.
"""

from __future__ import annotations

import re
from typing import NamedTuple

import numpy as np

from .core import DEFAULT_CAPS, BooleanFunction, Caps, from_truth_table
from .errors import ExpressionSyntaxError

_BINARY = {"|": 1, "^": 2, "&": 3}

_TOKEN = re.compile(r"\s*(?:(x\d+)|([01])|([!&|^()]))")


class Token(NamedTuple):
    kind: str  # "var", "const", "op", "end"
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[start]!r}", start, text)
        var, const, op = m.groups()
        start = m.start(m.lastindex)
        if var:
            tokens.append(Token("var", var, start))
        elif const:
            tokens.append(Token("const", const, start))
        else:
            tokens.append(Token("op", op, start))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.tokens = tokenize(text)
        self.i = 0
        idx = np.arange(1 << n, dtype=np.int64)
        self.vars = [((idx >> j) & 1).astype(bool) for j in range(n)]
        self.size = 1 << n

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg: str, tok: Token):
        raise ExpressionSyntaxError(msg, tok.pos, self.text)

    def parse(self) -> np.ndarray:
        value = self.expression(1)
        tok = self.peek()
        if tok.kind != "end":
            self.fail(f"unexpected {tok.value!r}", tok)
        return value

    def expression(self, min_prec: int) -> np.ndarray:
        lhs = self.unary()
        while True:
            tok = self.peek()
            prec = _BINARY.get(tok.value) if tok.kind == "op" else None
            if prec is None or prec < min_prec:
                return lhs
            self.advance()
            rhs = self.expression(prec + 1)
            if tok.value == "&":
                lhs = lhs & rhs
            elif tok.value == "^":
                lhs = lhs ^ rhs
            else:
                lhs = lhs | rhs

    def unary(self) -> np.ndarray:
        tok = self.advance()
        if tok.kind == "op" and tok.value == "!":
            return ~self.unary()
        if tok.kind == "op" and tok.value == "(":
            inner = self.expression(1)
            close = self.advance()
            if close.value != ")":
                self.fail("expected ')'", close)
            return inner
        if tok.kind == "const":
            return np.full(self.size, tok.value == "1")
        if tok.kind == "var":
            k = int(tok.value[1:])
            if not 1 <= k <= self.n:
                self.fail(f"variable {tok.value} outside x1..x{self.n}", tok)
            return self.vars[k - 1].copy()
        if tok.kind == "end":
            self.fail("unexpected end of expression", tok)
        self.fail(f"unexpected {tok.value!r}", tok)


def parse_expression(text: str, n: int, caps: Caps = DEFAULT_CAPS) -> BooleanFunction:
    """Evaluate ``text`` on every assignment of ``n`` variables.

    >>> parse_expression("x1 & x2", 2).table.tolist()
    [0, 0, 0, 1]
    """
    caps.check("max_n", n)
    values = _Parser(text, n).parse()
    return from_truth_table(n, values.astype(np.uint8), caps)
