"""A small expression language for user-defined distances d²(x, y).

Grammar, lowest precedence first::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right-associative
    atom   := NUMBER | 'x' | 'y' | 'pi' | NAME '(' args ')' | '(' expr ')'

Numbers accept decimal and scientific notation (``3``, ``.5``, ``2.5e-3``).
Functions: abs, sqrt, sin, cos, exp, log (one argument) and min, max (two).
Unary minus binds looser than ``^``, so ``-2^2`` is ``-4``.

Evaluation works element-wise on scalars or numpy arrays. Missing scores
never reach an expression; the caller substitutes distance 0 for them.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import EvalError, ParseError, UnknownIdentifier

__all__ = [
    "Num", "Var", "Const", "Neg", "BinOp", "Call", "Expr",
    "parse", "evaluate", "evaluate_array", "to_source",
    "Violation", "Diagnostics", "validate_distance",
]


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str  # "x" or "y"


@dataclass(frozen=True)
class Const:
    name: str  # only "pi"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


Expr = Union[Num, Var, Const, Neg, BinOp, Call]

UNARY_FUNCS = {
    "abs": np.abs,
    "sqrt": np.sqrt,
    "sin": np.sin,
    "cos": np.cos,
    "exp": np.exp,
    "log": np.log,
}
BINARY_FUNCS = {"min": np.minimum, "max": np.maximum}
CONSTANTS = {"pi": math.pi}
VARIABLES = ("x", "y")


# -- tokenizer ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, name, op, eof
    text: str
    pos: int


def _tokenize(source: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", pos, "atom or operator")
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(source)))
    return toks


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, source: str):
        self.toks = _tokenize(source)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _is(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def _expect(self, text: str) -> None:
        if not self._is(text):
            raise self._error(f"'{text}'")
        self.i += 1

    def _error(self, expected: str) -> ParseError:
        tok = self.tok
        what = "end of input" if tok.kind == "eof" else f"token {tok.text!r}"
        return ParseError(f"unexpected {what}", tok.pos, expected)

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "eof":
            raise self._error("operator or end of input")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self._is("+") or self._is("-"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self._is("*") or self._is("/"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self._is("-"):
            self.i += 1
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self._is("^"):
            self.i += 1
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            value = float(tok.text)
            if not math.isfinite(value):
                raise ParseError("numeric literal overflows", tok.pos, "finite number")
            self.i += 1
            return Num(value)
        if tok.kind == "name":
            self.i += 1
            return self._named(tok)
        if self._is("("):
            self.i += 1
            node = self.expr()
            self._expect(")")
            return node
        raise self._error("atom")

    def _named(self, tok: _Tok) -> Expr:
        name = tok.text
        if name in VARIABLES:
            return Var(name)
        if name in CONSTANTS:
            return Const(name)
        if name in UNARY_FUNCS:
            arity = 1
        elif name in BINARY_FUNCS:
            arity = 2
        else:
            raise UnknownIdentifier(f"unknown identifier {name!r}", tok.pos, "x, y, pi or a function")
        self._expect("(")
        args = [self.expr()]
        while self._is(","):
            self.i += 1
            args.append(self.expr())
        if len(args) != arity:
            raise ParseError(
                f"{name}() takes {arity} argument{'s' if arity > 1 else ''}, got {len(args)}",
                tok.pos,
                f"{arity} argument{'s' if arity > 1 else ''}",
            )
        self._expect(")")
        return Call(name, tuple(args))


def parse(source: str) -> Expr:
    """Parse distance-expression text into an immutable AST."""
    return _Parser(source).parse()


# -- evaluation --------------------------------------------------------------

def _check(value, what: str):
    if not np.all(np.isfinite(value)):
        raise EvalError(f"{what} produced a non-finite value")
    return value


def _eval(node: Expr, x, y):
    if isinstance(node, Num):
        return np.float64(node.value)
    if isinstance(node, Var):
        return x if node.name == "x" else y
    if isinstance(node, Const):
        return np.float64(CONSTANTS[node.name])
    if isinstance(node, Neg):
        return -_eval(node.operand, x, y)
    if isinstance(node, BinOp):
        a = _eval(node.left, x, y)
        b = _eval(node.right, x, y)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return _check(a / b, "division")
        return _check(a ** b, "power")
    if isinstance(node, Call):
        args = [_eval(arg, x, y) for arg in node.args]
        if node.func == "log" and np.any(np.asarray(args[0]) <= 0):
            raise EvalError("log of a non-positive argument")
        if node.func == "sqrt" and np.any(np.asarray(args[0]) < 0):
            raise EvalError("sqrt of a negative argument")
        if node.func in BINARY_FUNCS:
            return BINARY_FUNCS[node.func](*args)
        return _check(UNARY_FUNCS[node.func](args[0]), node.func)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_array(ast: Expr, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Element-wise evaluation over broadcastable float arrays."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    with np.errstate(all="ignore"):
        out = _eval(ast, x, y)
        out = _check(out, "expression")
    return np.broadcast_to(np.asarray(out, dtype=float), np.broadcast_shapes(x.shape, y.shape))


def evaluate(ast: Expr, x: float, y: float) -> float:
    return float(evaluate_array(ast, np.float64(x), np.float64(y)))


# -- printing ----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _prec(node: Expr) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _PREC["neg"]
    return 5


def to_source(node: Expr) -> str:
    """Render with the fewest parentheses that re-parse to the same tree."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, (Var, Const)):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({', '.join(to_source(a) for a in node.args)})"
    if isinstance(node, Neg):
        inner = to_source(node.operand)
        return f"-({inner})" if _prec(node.operand) < 3 else f"-{inner}"
    left, right = to_source(node.left), to_source(node.right)
    if node.op == "^":
        if _prec(node.left) < 5:
            left = f"({left})"
        if _prec(node.right) < 3:
            right = f"({right})"
        return f"{left}^{right}"
    p = _PREC[node.op]
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# -- validation --------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    kind: str  # "symmetry", "zero-diagonal" or "evaluation"
    x: float
    y: float
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} violation at ({self.x:g}, {self.y:g}): {self.detail}"


@dataclass
class Diagnostics:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def of_kind(self, kind: str) -> list:
        return [v for v in self.violations if v.kind == kind]


def _try(ast: Expr, x: float, y: float):
    try:
        return evaluate(ast, x, y), None
    except EvalError as exc:
        return None, str(exc)


def validate_distance(ast: Expr, probe_grid: Sequence[float]) -> Diagnostics:
    """Probe symmetry and zero diagonal on the grid's Cartesian square.

    Never raises for a bad expression; every problem becomes a ``Violation``.
    """
    grid = [float(v) for v in probe_grid]
    if not grid:
        raise ValueError("probe grid must be non-empty")
    diag = Diagnostics()
    for i, a in enumerate(grid):
        val, err = _try(ast, a, a)
        if err:
            diag.violations.append(Violation("evaluation", a, a, err))
        elif val != 0.0:
            diag.violations.append(Violation("zero-diagonal", a, a, f"d(x, x) = {val!r}"))
        for b in grid[i + 1:]:
            fwd, err_f = _try(ast, a, b)
            bwd, err_b = _try(ast, b, a)
            if err_f or err_b:
                diag.violations.append(Violation("evaluation", a, b, err_f or err_b))
            elif not math.isclose(fwd, bwd, rel_tol=1e-12, abs_tol=0.0):
                diag.violations.append(
                    Violation("symmetry", a, b, f"d(x, y) = {fwd!r} but d(y, x) = {bwd!r}")
                )
    return diag
