"""A small expression language in the variable ``u``.

Grammar (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' exponent)?
    atom   := number | 'u' | 'ln' '(' expr ')' | 'exp' '(' expr ')' | '(' expr ')'
    exponent := ['-'] number | '(' ['-'] number ')'

``^`` binds tighter than unary minus, so ``-u^2`` is ``-(u^2)``. Exponents are
numeric literals, which keeps :func:`diff` total. ASTs are immutable.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from gaconvex.errors import (
    EvaluationDomainError,
    EvaluationError,
    ExprSyntaxError,
    UnknownIdentifierError,
)

# {{{ AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: float


@dataclass(frozen=True)
class Ln:
    arg: "Expr"


@dataclass(frozen=True)
class Exp:
    arg: "Expr"


Expr = Union[Num, Var, Neg, Add, Sub, Mul, Div, Pow, Ln, Exp]

# }}}

# {{{ parser

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)
_FUNCTIONS = {"ln": Ln, "exp": Exp}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    column: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(src, pos)
        if match is None or match.end() == pos:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", pos + 1)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(_Token(kind, match.group(kind), start + 1))
        pos = match.end()
    tokens.append(_Token("end", "", len(src) + 1))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, expected: str) -> ExprSyntaxError:
        token = self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        return ExprSyntaxError(f"expected {expected}, found {found}", token.column)

    def expect_op(self, op: str) -> None:
        if self.current.kind != "op" or self.current.text != op:
            raise self.error(repr(op))
        self.advance()

    def at_op(self, *ops: str) -> bool:
        return self.current.kind == "op" and self.current.text in ops

    def parse(self) -> Expr:
        node = self.expr()
        if self.current.kind != "end":
            raise self.error("operator or end of input")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self) -> Expr:
        if self.at_op("-"):
            self.advance()
            return Neg(self.factor())
        node = self.atom()
        if self.at_op("^"):
            self.advance()
            node = Pow(node, self.exponent())
        return node

    def signed_number(self) -> float:
        sign = 1.0
        if self.at_op("-"):
            self.advance()
            sign = -1.0
        if self.current.kind != "num":
            raise self.error("numeric exponent")
        return sign * float(self.advance().text)

    def exponent(self) -> float:
        if self.at_op("("):
            self.advance()
            value = self.signed_number()
            self.expect_op(")")
            return value
        return self.signed_number()

    def atom(self) -> Expr:
        token = self.current
        if token.kind == "num":
            self.advance()
            return Num(float(token.text))
        if token.kind == "ident":
            self.advance()
            if token.text == "u":
                return Var()
            if token.text in _FUNCTIONS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return _FUNCTIONS[token.text](arg)
            raise UnknownIdentifierError(token.text, token.column)
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        raise self.error("number, 'u', function or '('")


def parse(src: str) -> Expr:
    """Parse *src* into an :data:`Expr`.

    :raises ExprSyntaxError: with the 1-based column of the offending token.
    :raises UnknownIdentifierError: for names other than ``u``, ``ln``, ``exp``.
    """
    if not src or not src.strip():
        raise ExprSyntaxError("empty expression", 1)
    return _Parser(src).parse()


# }}}

# {{{ printing

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def _prec(e: Expr) -> int:
    if isinstance(e, Num) and (e.value < 0 or math.copysign(1.0, e.value) < 0):
        return 3
    return _PREC.get(type(e), 5)


def _num(value: float) -> str:
    text = repr(float(value))
    return f"({text})" if text.startswith("-") else text


def to_string(e: Expr) -> str:
    """Render *e* with the fewest parentheses that reparse to the same tree."""
    if isinstance(e, Num):
        return _num(e.value)
    if isinstance(e, Var):
        return "u"
    if isinstance(e, Ln):
        return f"ln({to_string(e.arg)})"
    if isinstance(e, Exp):
        return f"exp({to_string(e.arg)})"
    if isinstance(e, Neg):
        inner = to_string(e.arg)
        if _prec(e.arg) < 3:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, Pow):
        base = to_string(e.base)
        if _prec(e.base) <= 4:
            base = f"({base})"
        exponent = repr(float(e.exponent))
        return f"{base}^{exponent}"

    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
    prec = _PREC[type(e)]
    left = to_string(e.left)
    if _prec(e.left) < prec:
        left = f"({left})"
    right = to_string(e.right)
    if _prec(e.right) <= prec:
        right = f"({right})"
    return f"{left} {op} {right}"


# }}}

# {{{ differentiation


def _is_num(e: Expr, value: float | None = None) -> bool:
    return isinstance(e, Num) and (value is None or e.value == value)


def _add(x: Expr, y: Expr) -> Expr:
    if _is_num(x) and _is_num(y):
        return Num(x.value + y.value)
    if _is_num(x, 0.0):
        return y
    if _is_num(y, 0.0):
        return x
    return Add(x, y)


def _sub(x: Expr, y: Expr) -> Expr:
    if _is_num(x) and _is_num(y):
        return Num(x.value - y.value)
    if _is_num(y, 0.0):
        return x
    if _is_num(x, 0.0):
        return _neg(y)
    return Sub(x, y)


def _neg(x: Expr) -> Expr:
    if _is_num(x):
        return Num(-x.value)
    if isinstance(x, Neg):
        return x.arg
    return Neg(x)


def _mul(x: Expr, y: Expr) -> Expr:
    if _is_num(x) and _is_num(y):
        return Num(x.value * y.value)
    if _is_num(x, 0.0) or _is_num(y, 0.0):
        return Num(0.0)
    if _is_num(x, 1.0):
        return y
    if _is_num(y, 1.0):
        return x
    return Mul(x, y)


def _div(x: Expr, y: Expr) -> Expr:
    if _is_num(x, 0.0):
        return Num(0.0)
    if _is_num(y, 1.0):
        return x
    if _is_num(x) and _is_num(y) and y.value != 0.0:
        return Num(x.value / y.value)
    return Div(x, y)


def _pow(x: Expr, c: float) -> Expr:
    if c == 1.0:
        return x
    if c == 0.0:
        return Num(1.0)
    return Pow(x, c)


def diff(e: Expr) -> Expr:
    """Derivative of *e* with respect to ``u``, with constant folding only."""
    if isinstance(e, Num):
        return Num(0.0)
    if isinstance(e, Var):
        return Num(1.0)
    if isinstance(e, Neg):
        return _neg(diff(e.arg))
    if isinstance(e, Add):
        return _add(diff(e.left), diff(e.right))
    if isinstance(e, Sub):
        return _sub(diff(e.left), diff(e.right))
    if isinstance(e, Mul):
        return _add(_mul(diff(e.left), e.right), _mul(e.left, diff(e.right)))
    if isinstance(e, Div):
        num = _sub(_mul(diff(e.left), e.right), _mul(e.left, diff(e.right)))
        return _div(num, _pow(e.right, 2.0))
    if isinstance(e, Pow):
        c = e.exponent
        return _mul(_mul(Num(c), _pow(e.base, c - 1.0)), diff(e.base))
    if isinstance(e, Ln):
        return _div(diff(e.arg), e.arg)
    if isinstance(e, Exp):
        return _mul(diff(e.arg), e)
    raise TypeError(f"not an expression node: {e!r}")


# }}}

# {{{ evaluation


def _power(base: np.ndarray, c: float) -> np.ndarray:
    if float(c).is_integer():
        # integer powers of negative bases are fine
        return base**c
    if np.any(base < 0):
        raise EvaluationDomainError(f"non-integer power {c} of a negative number")
    return base**c


def compile_expr(e: Expr) -> Callable[[np.ndarray], np.ndarray]:
    """Turn *e* into a vectorized numpy callable.

    The returned function raises :class:`EvaluationError` on ``ln`` of a
    non-positive value, on invalid powers, and on non-finite results.
    """

    def build(node: Expr):
        if isinstance(node, Num):
            value = node.value
            return lambda u: np.full(np.shape(u), value)
        if isinstance(node, Var):
            return lambda u: u
        if isinstance(node, Neg):
            g = build(node.arg)
            return lambda u: -g(u)
        if isinstance(node, (Add, Sub, Mul, Div)):
            fl, fr = build(node.left), build(node.right)
            if isinstance(node, Add):
                return lambda u: fl(u) + fr(u)
            if isinstance(node, Sub):
                return lambda u: fl(u) - fr(u)
            if isinstance(node, Mul):
                return lambda u: fl(u) * fr(u)
            return lambda u: fl(u) / fr(u)
        if isinstance(node, Pow):
            g = build(node.base)
            c = node.exponent
            return lambda u: _power(g(u), c)
        if isinstance(node, Ln):
            g = build(node.arg)

            def log(u):
                arg = g(u)
                if np.any(arg <= 0):
                    raise EvaluationDomainError("ln of a non-positive value")
                return np.log(arg)

            return log
        if isinstance(node, Exp):
            g = build(node.arg)
            return lambda u: np.exp(g(u))
        raise TypeError(f"not an expression node: {node!r}")

    inner = build(e)

    def evaluate_array(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(all="ignore"):
            result = inner(u)
        if not np.all(np.isfinite(result)):
            raise EvaluationError("expression evaluated to a non-finite value")
        return result

    return evaluate_array


def evaluate(e: Expr, u: float) -> float:
    """Evaluate *e* at the scalar *u*."""
    return float(compile_expr(e)(np.float64(u)))


# }}}
