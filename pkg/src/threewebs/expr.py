"""Expression syntax for series inputs, and the canonical text format.

Grammar (whitespace insignificant, juxtaposition multiplies)::

    expr     := ["+" | "-"] term (("+" | "-") term)*
    term     := factor (["*"] factor)*
    factor   := base ["^" nat]
    base     := rational | "x" | "y" | "t" | "(" expr ")"
    rational := int ["/" posint]

``format_series`` writes the canonical form: monomials by ascending total
degree, then descending x-exponent, coefficients as reduced ``p/q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from gmpy2 import mpq

from .errors import NegativeExponent, ParseError
from .series import Series1, Series2

VARIABLES = ("x", "y", "t")


@dataclass(frozen=True)
class Num:
    value: object  # mpq


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([xyt])|([-+*/^()]))")


def _tokenize(src):
    """List of (kind, text, byte_offset); kind is 'int', 'var', a symbol, or 'end'."""
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            tokens.append(("end", "", _byte_offset(src, pos)))
            return tokens
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", _byte_offset(src, pos),
                             {"number", "x", "y", "t", "("})
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), _byte_offset(src, start)))
        elif m.group(2):
            tokens.append(("var", m.group(2), _byte_offset(src, start)))
        else:
            tokens.append((m.group(3), m.group(3), _byte_offset(src, start)))
        pos = m.end()


def _byte_offset(src, index):
    return len(src[:index].encode("utf-8"))


_BASE_START = {"number", "x", "y", "t", "("}


class _Parser:
    def __init__(self, src):
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected, message=None):
        kind, text, offset = self.peek()
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(message or f"unexpected {found}", offset, expected)

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(_BASE_START | {"+", "-", "*", "^", "end of input"})
        return node

    def expr(self):
        sign = None
        if self.peek()[0] in ("+", "-"):
            sign = self.take()[0]
        node = self.term()
        if sign == "-":
            node = Neg(node)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                node = BinOp("*", node, self.factor())
            elif kind in ("int", "var", "("):
                node = BinOp("*", node, self.factor())
            else:
                return node

    def factor(self):
        node = self.base()
        if self.peek()[0] == "^":
            self.take()
            kind, text, offset = self.peek()
            if kind == "-":
                raise NegativeExponent("negative exponent", offset, {"non-negative integer"})
            if kind != "int":
                self.fail({"non-negative integer"})
            self.take()
            node = Pow(node, int(text))
        return node

    def base(self):
        kind, text, offset = self.peek()
        if kind == "int":
            self.take()
            value = mpq(int(text))
            if self.peek()[0] == "/":
                self.take()
                kind, den, _ = self.peek()
                if kind != "int" or int(den) == 0:
                    self.fail({"positive integer"})
                self.take()
                value = mpq(int(text), int(den))
            return Num(value)
        if kind == "var":
            self.take()
            return Var(text)
        if kind == "(":
            self.take()
            node = self.expr()
            if self.peek()[0] != ")":
                self.fail({")", "+", "-", "*"} | _BASE_START)
            self.take()
            return node
        self.fail(_BASE_START)


def parse_expr(src: str):
    """Parse expression text into an AST (Num, Var, Neg, BinOp, Pow)."""
    return _Parser(src).parse()


def variables(node):
    """Set of variable names occurring in an AST."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, Neg):
        return variables(node.operand)
    if isinstance(node, Pow):
        return variables(node.base)
    return variables(node.left) | variables(node.right)


def evaluate(node, order, kind="2", var="t"):
    """Expand an AST into a Series2 (kind "2", variables x, y) or Series1
    (kind "1", single variable ``var``) truncated at ``order``."""
    if kind == "2":
        leaves = {"x": Series2.x(order), "y": Series2.y(order)}
        const = Series2.const
    else:
        leaves = {var: Series1.t(order)}
        const = Series1.const

    def ev(n):
        if isinstance(n, Num):
            return const(n.value, order)
        if isinstance(n, Var):
            if n.name not in leaves:
                allowed = ", ".join(sorted(leaves))
                raise ParseError(f"variable {n.name!r} not allowed here (use {allowed})", 0,
                                 set(leaves))
            return leaves[n.name]
        if isinstance(n, Neg):
            return -ev(n.operand)
        if isinstance(n, Pow):
            return ev(n.base) ** n.exponent
        a, b = ev(n.left), ev(n.right)
        if n.op == "+":
            return a + b
        if n.op == "-":
            return a - b
        return a * b

    return ev(node)


def parse_series2(src, order):
    return evaluate(parse_expr(src), order, "2")


def parse_series1(src, order, var=None):
    """Parse a univariate expression; the variable is t, or x if the text uses x."""
    node = parse_expr(src)
    if var is None:
        used = variables(node)
        var = "x" if used == {"x"} else "t"
    return evaluate(node, order, "1", var)


def _coeff_text(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial(exps):
    parts = []
    for name, e in exps:
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_series(s, var="t") -> str:
    """Canonical text of a Series1 (in ``var``) or Series2 (in x, y)."""
    if isinstance(s, Series2):
        terms = [(c, _monomial((("x", r), ("y", q)))) for (r, q), c in s.items()]
    else:
        terms = [(c, _monomial(((var, d),))) for d, c in s.items()]
    if not terms:
        return "0"
    out = []
    for i, (c, mono) in enumerate(terms):
        mag = abs(c)
        if not mono:
            body = _coeff_text(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coeff_text(mag)}*{mono}"
        if i == 0:
            out.append("-" + body if c < 0 else body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)
