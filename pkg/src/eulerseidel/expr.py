"""Coefficient expressions over the lattice variables ``n`` and ``k``.

Grammar (unary minus binds tighter than ``*`` and ``/``)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | atom
    atom   := INT | INT '/' INT | 'n' | 'k' | '(' expr ')'

An integer literal directly followed by ``/`` and another integer literal is
read as one rational constant, so ``3/2`` parses to ``Const(3/2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, ParseError

__all__ = [
    "Expr",
    "Const",
    "VarN",
    "VarK",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "parse_expr",
    "eval_expr",
    "substitute",
]


class Expr:
    """Base class of the expression tree."""

    def evaluate(self, n, k) -> Fraction:
        raise NotImplementedError

    def __call__(self, n, k) -> Fraction:
        return self.evaluate(n, k)

    def variables(self) -> frozenset[str]:
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))

    def evaluate(self, n, k):
        return self.value

    def variables(self):
        return frozenset()

    def __str__(self):
        v = self.value
        if v < 0:
            return f"(-{-v})"
        if v.denominator != 1:
            return f"({v})"
        return str(v)


@dataclass(frozen=True)
class VarN(Expr):
    def evaluate(self, n, k):
        return Fraction(n)

    def variables(self):
        return frozenset("n")

    def __str__(self):
        return "n"


@dataclass(frozen=True)
class VarK(Expr):
    def evaluate(self, n, k):
        return Fraction(k)

    def variables(self):
        return frozenset("k")

    def __str__(self):
        return "k"


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    def evaluate(self, n, k):
        return -self.operand.evaluate(n, k)

    def variables(self):
        return self.operand.variables()

    def __str__(self):
        return f"-({self.operand})"


@dataclass(frozen=True)
class _Binary(Expr):
    left: Expr
    right: Expr

    symbol = "?"

    def variables(self):
        return self.left.variables() | self.right.variables()

    def __str__(self):
        return f"({self.left} {self.symbol} {self.right})"


class Add(_Binary):
    symbol = "+"

    def evaluate(self, n, k):
        return self.left.evaluate(n, k) + self.right.evaluate(n, k)


class Sub(_Binary):
    symbol = "-"

    def evaluate(self, n, k):
        return self.left.evaluate(n, k) - self.right.evaluate(n, k)


class Mul(_Binary):
    symbol = "*"

    def evaluate(self, n, k):
        return self.left.evaluate(n, k) * self.right.evaluate(n, k)


class Div(_Binary):
    symbol = "/"

    def evaluate(self, n, k):
        den = self.right.evaluate(n, k)
        if den == 0:
            raise DivisionByZero(n, k, f"denominator {self.right} vanishes")
        return self.left.evaluate(n, k) / den


def eval_expr(e: Expr, n: int, k: int) -> Fraction:
    return e.evaluate(n, k)


def substitute(e: Expr, n: Expr, k: Expr) -> Expr:
    """Replace every ``n`` by the tree ``n`` and every ``k`` by ``k``."""
    if isinstance(e, VarN):
        return n
    if isinstance(e, VarK):
        return k
    if isinstance(e, Const):
        return e
    if isinstance(e, Neg):
        return Neg(substitute(e.operand, n, k))
    return type(e)(substitute(e.left, n, k), substitute(e.right, n, k))


# parser ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+/\d+)|(\d+)|([A-Za-z_]\w*)|(\S))")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        rat, integer, name, op = m.groups()
        if rat is not None:
            p, q = rat.split("/")
            if int(q) == 0:
                raise ParseError(f"zero denominator in rational literal '{rat}'", start, text)
            tokens.append(("num", Fraction(int(p), int(q)), start, rat))
        elif integer is not None:
            tokens.append(("num", Fraction(int(integer)), start, integer))
        elif name is not None:
            tokens.append(("name", name, start, name))
        else:
            tokens.append(("op", op, start, op))
        pos = m.end()
    tokens.append(("end", None, len(text), ""))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.variables = variables
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, tok):
        kind, _, pos, raw = tok
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.text)
        raise ParseError(f"unexpected token '{raw}'", pos, self.text)

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.text)
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(self.peek())
        return e

    def expr(self):
        e = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.advance()[1]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self):
        e = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.advance()[1]
            rhs = self.unary()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.advance()
            return Neg(self.unary())
        return self.atom()

    def atom(self):
        tok = self.advance()
        kind, value = tok[0], tok[1]
        if kind == "num":
            return Const(value)
        if kind == "name" and value in self.variables:
            return VarN() if value == "n" else VarK()
        if kind == "op" and value == "(":
            e = self.expr()
            close = self.advance()
            if close[0] != "op" or close[1] != ")":
                self.error(close)
            return e
        self.error(tok)


def parse_expr(text: str, variables=("n", "k")) -> Expr:
    """Parse ``text`` into an expression tree.

    ``variables`` restricts which of ``n`` and ``k`` may appear; any other
    identifier is reported as an unexpected token.
    """
    return _Parser(text, frozenset(variables)).parse()
