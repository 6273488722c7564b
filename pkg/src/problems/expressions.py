"""
expressions.py — Parse "expr1; expr2; ..." into an operator whose Jacobian comes
from forward-mode dual numbers (exact to the working precision).

Grammar (whitespace insignificant, ^ binds tightest and is right-associative):
    system  := expr (';' expr)*
    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | '+' unary | power
    power   := primary ('^' unary)?
    primary := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..convball_utils.errors import ArityError, EvalDomainError, ParseError
from ..solvers.arithmetic import Arithmetic
from .operator import Ball, OperatorSpec

FUNCTIONS = ("exp", "log", "sin", "cos", "sqrt")

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^();]))"
)


# ---------- syntax tree ----------

@dataclass(frozen=True)
class Num:
    text: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"


Node = Union[Num, Var, Neg, BinOp, Call]


# ---------- tokenizer / parser ----------

def tokenize(source: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    source = source.rstrip()
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if not m or m.end() == pos:
            bad = pos + (len(source[pos:]) - len(source[pos:].lstrip()))
            raise ParseError(bad, f"unexpected character {source[bad]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def current(self) -> Tuple[str, str, int]:
        return self.tokens[self.i]

    def accept(self, value: str) -> bool:
        kind, text, _ = self.current
        if kind == "op" and text == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> None:
        if not self.accept(value):
            kind, text, pos = self.current
            raise ParseError(pos, f"expected {value!r}, found {text or 'end of input'!r}")

    def system(self) -> List[Node]:
        exprs = [self.expr()]
        while self.accept(";"):
            if self.current[0] == "end":
                break
            exprs.append(self.expr())
        kind, text, pos = self.current
        if kind != "end":
            raise ParseError(pos, f"unexpected {text!r}")
        return exprs

    def expr(self) -> Node:
        node = self.term()
        while True:
            if self.accept("+"):
                node = BinOp("+", node, self.term())
            elif self.accept("-"):
                node = BinOp("-", node, self.term())
            else:
                return node

    def term(self) -> Node:
        node = self.unary()
        while True:
            if self.accept("*"):
                node = BinOp("*", node, self.unary())
            elif self.accept("/"):
                node = BinOp("/", node, self.unary())
            else:
                return node

    def unary(self) -> Node:
        if self.accept("-"):
            return Neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.primary()
        if self.accept("^"):
            return BinOp("^", base, self.unary())
        return base

    def primary(self) -> Node:
        kind, text, pos = self.current
        if kind == "num":
            self.i += 1
            return Num(text)
        if kind == "name":
            self.i += 1
            if self.accept("("):
                if text not in FUNCTIONS:
                    raise ParseError(pos, f"unknown function {text!r}")
                arg = self.expr()
                self.expect(")")
                return Call(text, arg)
            if text in FUNCTIONS:
                raise ParseError(pos, f"function {text!r} needs an argument")
            return Var(text)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(pos, f"unexpected {text or 'end of input'!r}")


def parse_expressions(source: str) -> List[Node]:
    return _Parser(source).system()


def format_expression(node: Node) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(node, Num):
        return node.text
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{format_expression(node.operand)})"
    if isinstance(node, Call):
        return f"{node.fn}({format_expression(node.arg)})"
    return f"({format_expression(node.left)} {node.op} {format_expression(node.right)})"


def variables_of(node: Node) -> set:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, (Neg,)):
        return variables_of(node.operand)
    if isinstance(node, Call):
        return variables_of(node.arg)
    return variables_of(node.left) | variables_of(node.right)


# ---------- dual numbers ----------

class Dual:
    """Value with one tangent component; components are floats or mpmath numbers."""

    __slots__ = ("v", "d")

    def __init__(self, value, tangent=0):
        self.v = value
        self.d = tangent

    @staticmethod
    def lift(x) -> "Dual":
        return x if isinstance(x, Dual) else Dual(x, 0)

    def __add__(self, other):
        o = Dual.lift(other)
        return Dual(self.v + o.v, self.d + o.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = Dual.lift(other)
        return Dual(self.v - o.v, self.d - o.d)

    def __rsub__(self, other):
        return Dual.lift(other) - self

    def __mul__(self, other):
        o = Dual.lift(other)
        return Dual(self.v * o.v, self.d * o.v + self.v * o.d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Dual.lift(other)
        if o.v == 0:
            raise EvalDomainError("division by zero")
        return Dual(self.v / o.v, (self.d * o.v - self.v * o.d) / (o.v * o.v))

    def __rtruediv__(self, other):
        return Dual.lift(other) / self

    def __neg__(self):
        return Dual(-self.v, -self.d)


def _divide(a, b):
    if isinstance(a, Dual) or isinstance(b, Dual):
        return Dual.lift(a) / Dual.lift(b)
    if b == 0:
        raise EvalDomainError("division by zero")
    return a / b


def _power(base, exponent, arith: Arithmetic):
    if isinstance(exponent, Dual) and exponent.d != 0:
        # variable exponent: b^e = exp(e log b)
        return _call("exp", Dual.lift(exponent) * _call("log", base, arith), arith)
    e = exponent.v if isinstance(exponent, Dual) else exponent
    if isinstance(base, Dual):
        value = arith.power(base.v, e)
        if e == 0:
            return Dual(value, 0)
        return Dual(value, e * arith.power(base.v, e - 1) * base.d)
    return arith.power(base, e)


def _call(fn: str, x, arith: Arithmetic):
    if not isinstance(x, Dual):
        return getattr(arith, fn)(x)
    if fn == "exp":
        value = arith.exp(x.v)
        return Dual(value, value * x.d)
    if fn == "log":
        return Dual(arith.log(x.v), x.d / x.v)
    if fn == "sin":
        return Dual(arith.sin(x.v), arith.cos(x.v) * x.d)
    if fn == "cos":
        return Dual(arith.cos(x.v), -arith.sin(x.v) * x.d)
    if fn == "sqrt":
        root = arith.sqrt(x.v)
        if root == 0:
            raise EvalDomainError("sqrt is not differentiable at 0")
        return Dual(root, x.d / (2 * root))
    raise EvalDomainError(f"unknown function {fn!r}")


def evaluate_node(node: Node, env: Dict[str, object], arith: Arithmetic):
    if isinstance(node, Num):
        return arith.scalar(node.text)
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Neg):
        return -evaluate_node(node.operand, env, arith)
    if isinstance(node, Call):
        return _call(node.fn, evaluate_node(node.arg, env, arith), arith)
    left = evaluate_node(node.left, env, arith)
    right = evaluate_node(node.right, env, arith)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        return _divide(left, right)
    return _power(left, right, arith)


# ---------- operator construction ----------

def _default_variables(exprs: Sequence[Node]) -> List[str]:
    used = set().union(*(variables_of(e) for e in exprs))
    indexed = sorted(used, key=lambda name: int(name[1:]) if re.fullmatch(r"x\d+", name) else -1)
    bad = [name for name in indexed if not re.fullmatch(r"x[1-9]\d*", name)]
    if bad:
        raise ArityError(f"variables must be named x1..xn, found {', '.join(sorted(bad))}")
    count = max((int(name[1:]) for name in used), default=0)
    return [f"x{k}" for k in range(1, count + 1)]


def parse_system(
    source: str,
    variables: Optional[Sequence[str]] = None,
    root: Optional[Sequence[float]] = None,
    domain_radius: Optional[float] = None,
    name: str = "parsed",
) -> OperatorSpec:
    """
    Build an operator from semicolon-separated expressions. Without an explicit
    variable list the variables are x1..xn with n the highest index used.
    """
    exprs = parse_expressions(source)
    names = list(variables) if variables is not None else _default_variables(exprs)
    if len(names) != len(exprs):
        raise ArityError(f"{len(exprs)} equation(s) for {len(names)} variable(s)")
    unknown = set().union(*(variables_of(e) for e in exprs)) - set(names)
    if unknown:
        raise ArityError(f"undeclared variable(s): {', '.join(sorted(unknown))}")
    n = len(names)

    def residual(x: np.ndarray, arith: Arithmetic) -> np.ndarray:
        env = dict(zip(names, x))
        return arith.vector([evaluate_node(e, env, arith) for e in exprs])

    def jacobian(x: np.ndarray, arith: Arithmetic) -> np.ndarray:
        columns = []
        for j in range(n):
            env = {nm: Dual(x[k], 1 if k == j else 0) for k, nm in enumerate(names)}
            columns.append([Dual.lift(evaluate_node(e, env, arith)).d for e in exprs])
        return arith.matrix(np.array(columns, dtype=object).T)

    center = np.asarray(root, dtype=float) if root is not None else np.zeros(n)
    return OperatorSpec(
        name=name,
        dimension=n,
        residual_fn=residual,
        jacobian_fn=jacobian,
        known_root=None if root is None else np.asarray(root, dtype=float),
        domain=Ball(center, domain_radius),
        description="; ".join(format_expression(e) for e in exprs),
    )
