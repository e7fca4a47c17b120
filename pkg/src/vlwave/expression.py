"""A small arithmetic expression language for problem definitions.

Grammar (lowest to highest precedence)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := primary ("^" unary)?          # right associative
    primary := NUMBER | NAME | FUNC "(" expr ")" | "(" expr ")"

Names: ``x``, ``Y``, ``pi``. Functions: ``sin cos exp ln sqrt``. Evaluation is
vectorised over numpy arrays.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ExpressionSyntaxError",
    "EvaluationError",
    "Num",
    "Var",
    "Const",
    "Neg",
    "BinOp",
    "Call",
    "parse_expression",
    "serialize",
    "eval_expression",
    "variables",
]

FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt")
VARIABLES = ("x", "Y")
CONSTANTS = {"pi": math.pi}


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EvaluationError(ArithmeticError):
    def __init__(self, message: str, x=None):
        super().__init__(message if x is None else f"{message} (x={x!r})")
        self.x = x


class Node:
    __slots__ = ()

    def __call__(self, x, Y=None):
        return eval_expression(self, x, Y)

    def __str__(self) -> str:
        return serialize(self)


@dataclass(frozen=True)
class Num(Node):
    value: float


@dataclass(frozen=True)
class Var(Node):
    name: str


@dataclass(frozen=True)
class Const(Node):
    name: str


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Call(Node):
    func: str
    arg: Node


_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExpressionSyntaxError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value or kind != "op":
            found = "end of input" if kind == "end" else repr(val)
            raise ExpressionSyntaxError(f"expected {value!r}, found {found}", pos)

    def parse(self) -> Node:
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExpressionSyntaxError(f"unexpected token {val!r}", pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return Neg(self.unary())
        if kind == "op" and val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.primary()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def primary(self) -> Node:
        kind, val, pos = self.take()
        if kind == "num":
            return Num(float(val))
        if kind == "name":
            if val in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(val, arg)
            if val in VARIABLES:
                return Var(val)
            if val in CONSTANTS:
                return Const(val)
            raise ExpressionSyntaxError(f"unknown identifier {val!r}", pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(val)
        raise ExpressionSyntaxError(f"unexpected {found}", pos)


def parse_expression(text: str) -> Node:
    if not isinstance(text, str):
        raise TypeError(f"expression must be a string, got {type(text).__name__}")
    return _Parser(text).parse()


def serialize(node: Node) -> str:
    """Fully parenthesised text that parses back to an equal tree."""
    if isinstance(node, Num):
        return repr(float(node.value))
    if isinstance(node, (Var, Const)):
        return node.name
    if isinstance(node, Neg):
        return f"(-{serialize(node.operand)})"
    if isinstance(node, BinOp):
        return f"({serialize(node.left)} {node.op} {serialize(node.right)})"
    if isinstance(node, Call):
        return f"{node.func}({serialize(node.arg)})"
    raise TypeError(f"not an expression node: {node!r}")


def variables(node: Node) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Neg):
        return variables(node.operand)
    if isinstance(node, BinOp):
        return variables(node.left) | variables(node.right)
    if isinstance(node, Call):
        return variables(node.arg)
    return set()


def _first_bad(x, mask):
    xs, mask = np.asarray(x, dtype=float), np.asarray(mask)
    if mask.ndim == 0 or xs.ndim == 0:
        return float(xs.ravel()[0])
    return float(np.broadcast_to(xs, mask.shape)[mask].ravel()[0])


def _eval(node: Node, x, Y):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Const):
        return CONSTANTS[node.name]
    if isinstance(node, Var):
        if node.name == "x":
            return x
        if Y is None:
            raise EvaluationError("expression references Y but no Y value was supplied")
        return Y
    if isinstance(node, Neg):
        return -_eval(node.operand, x, Y)
    if isinstance(node, Call):
        a = _eval(node.arg, x, Y)
        if node.func == "ln":
            bad = np.asarray(a) <= 0
            if np.any(bad):
                raise EvaluationError("ln of a non-positive value", _first_bad(x, bad))
            return np.log(a)
        if node.func == "sqrt":
            bad = np.asarray(a) < 0
            if np.any(bad):
                raise EvaluationError("sqrt of a negative value", _first_bad(x, bad))
            return np.sqrt(a)
        return getattr(np, node.func)(a)
    if isinstance(node, BinOp):
        a = _eval(node.left, x, Y)
        b = _eval(node.right, x, Y)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            bad = np.asarray(b) == 0
            if np.any(bad):
                raise EvaluationError("division by zero", _first_bad(x, bad))
            return a / b
        out = np.power(np.asarray(a, dtype=float), b)
        bad = ~np.isfinite(out) & np.isfinite(np.asarray(a, dtype=float))
        if np.any(bad):
            raise EvaluationError("power undefined", _first_bad(x, bad))
        return out
    raise TypeError(f"not an expression node: {node!r}")


def eval_expression(node: Node, x, Y=None):
    """Evaluate at ``x`` (and ``Y``); arrays broadcast. Scalars in, float out."""
    scalar = np.ndim(x) == 0 and np.ndim(Y) == 0
    with np.errstate(all="ignore"):
        out = _eval(node, np.asarray(x, dtype=float), None if Y is None else np.asarray(Y, dtype=float))
    shape = np.broadcast_shapes(np.shape(x), np.shape(Y) if Y is not None else ())
    out = np.broadcast_to(np.asarray(out, dtype=float), shape)
    return float(out) if scalar else np.array(out)
