"""Closed-form symbols: parsing, pointwise evaluation, symbolic derivatives.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ['-'|'+'] base ('^' real)?
    base   := number | 'i' | VAR | 'log' '(' expr ')' | 'exp' '(' expr ')' | '(' expr ')'

``VAR`` is ``z`` for symbols on the disk and ``t`` for radial weight profiles.
Powers take a real literal exponent, optionally parenthesised and signed.
All powers and logarithms use the principal branch; ``1 - z`` has positive
real part on the disk, so the canonical symbols never cross a cut.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from . import series as ts
from .exceptions import DomainError, ExprSyntaxError, SingularityError

# --------------------------------------------------------------------------- nodes


@dataclass(frozen=True)
class Const:
    value: complex


@dataclass(frozen=True)
class Var:
    name: str = "z"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Div:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: float


@dataclass(frozen=True)
class Log:
    arg: "Node"


@dataclass(frozen=True)
class Exp:
    arg: "Node"


Node = Union[Const, Var, Add, Sub, Mul, Div, Neg, Pow, Log, Exp]

ZERO = Const(0j)
ONE = Const(1 + 0j)


def _is_const(n: Node, value=None) -> bool:
    return isinstance(n, Const) and (value is None or n.value == value)


# Smart constructors fold constants and drop neutral elements so that
# derivative trees stay small.


def _add(a: Node, b: Node) -> Node:
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def _sub(a: Node, b: Node) -> Node:
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return _neg(b)
    return Sub(a, b)


def _mul(a: Node, b: Node) -> Node:
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    return Mul(a, b)


def _div(a: Node, b: Node) -> Node:
    if _is_const(b, 1):
        return a
    if _is_const(a, 0) and not _is_const(b, 0):
        return ZERO
    if _is_const(a) and _is_const(b) and b.value != 0:
        return Const(a.value / b.value)
    return Div(a, b)


def _neg(a: Node) -> Node:
    if _is_const(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _pow(a: Node, exponent: float) -> Node:
    if exponent == 0:
        return ONE
    if exponent == 1:
        return a
    if _is_const(a) and (a.value != 0 or exponent > 0):
        return Const(complex(a.value) ** exponent)
    return Pow(a, float(exponent))


# --------------------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>\*\*|[-+*/^()]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if value == "**":
            value = "^"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, var: str):
        self.text = text
        self.var = var
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def _advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def _expect(self, value: str):
        kind, val, pos = self.tok
        if val != value:
            found = "end of input" if kind == "end" else repr(val)
            raise ExprSyntaxError(f"expected {value!r}, found {found}", pos, self.text)
        self._advance()

    def parse(self) -> Node:
        node = self.expr()
        kind, val, pos = self.tok
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {val!r}", pos, self.text)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok[1] in ("+", "-"):
            op = self._advance()[1]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok[1] in ("*", "/"):
            op = self._advance()[1]
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self) -> Node:
        if self.tok[1] in ("-", "+"):
            op = self._advance()[1]
            inner = self.factor()
            return Neg(inner) if op == "-" else inner
        node = self.base()
        if self.tok[1] == "^":
            self._advance()
            node = Pow(node, self.real())
        return node

    def real(self) -> float:
        if self.tok[1] == "(":
            self._advance()
            value = self.real()
            self._expect(")")
            return value
        sign = 1.0
        while self.tok[1] in ("-", "+"):
            if self._advance()[1] == "-":
                sign = -sign
        kind, val, pos = self.tok
        if kind != "num":
            raise ExprSyntaxError("exponent must be a real literal", pos, self.text)
        self._advance()
        return sign * float(val)

    def base(self) -> Node:
        kind, val, pos = self.tok
        if kind == "num":
            self._advance()
            return Const(complex(float(val)))
        if kind == "name":
            self._advance()
            if val == self.var:
                return Var(self.var)
            if val == "i":
                return Const(1j)
            if val in ("log", "exp"):
                self._expect("(")
                arg = self.expr()
                self._expect(")")
                return Log(arg) if val == "log" else Exp(arg)
            raise ExprSyntaxError(f"unknown identifier {val!r}", pos, self.text)
        if val == "(":
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        found = "end of input" if kind == "end" else repr(val)
        raise ExprSyntaxError(f"unexpected {found}", pos, self.text)


# --------------------------------------------------------------------------- evaluation


def _eval_node(node: Node, z: np.ndarray) -> np.ndarray:
    if isinstance(node, Const):
        out = np.full(z.shape, node.value, dtype=complex)
    elif isinstance(node, Var):
        out = z
    elif isinstance(node, Add):
        out = _eval_node(node.left, z) + _eval_node(node.right, z)
    elif isinstance(node, Sub):
        out = _eval_node(node.left, z) - _eval_node(node.right, z)
    elif isinstance(node, Mul):
        out = _eval_node(node.left, z) * _eval_node(node.right, z)
    elif isinstance(node, Div):
        num = _eval_node(node.left, z)
        den = _eval_node(node.right, z)
        if np.any(den == 0):
            raise SingularityError(f"division by zero in {to_text(node)}")
        out = num / den
    elif isinstance(node, Neg):
        out = -_eval_node(node.arg, z)
    elif isinstance(node, Pow):
        base = _eval_node(node.base, z)
        e = node.exponent
        if e < 0 and np.any(base == 0):
            raise SingularityError(f"negative power of zero in {to_text(node)}")
        if float(e).is_integer() and abs(e) <= 64:
            out = base ** int(e)
        else:
            out = np.power(base, e)
    elif isinstance(node, Log):
        arg = _eval_node(node.arg, z)
        if np.any(arg == 0):
            raise SingularityError(f"logarithm of zero in {to_text(node)}")
        out = np.log(arg)
    elif isinstance(node, Exp):
        out = np.exp(_eval_node(node.arg, z))
    else:  # pragma: no cover
        raise TypeError(f"unknown node {node!r}")
    if not np.all(np.isfinite(out)):
        raise SingularityError(f"non-finite value of {to_text(node)}")
    return out


# --------------------------------------------------------------------------- printing

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def _fmt_real(x: float) -> str:
    if float(x).is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(float(x))


def _fmt_const(c: complex) -> str:
    re_, im = c.real, c.imag
    if im == 0:
        s = _fmt_real(re_)
        return f"({s})" if re_ < 0 else s
    im_part = "i" if im == 1 else f"{_fmt_real(abs(im))}*i"
    if re_ == 0:
        return f"(-{im_part})" if im < 0 else im_part
    sign = "-" if im < 0 else "+"
    return f"({_fmt_real(re_)}{sign}{im_part})"


def to_text(node: Node) -> str:
    if isinstance(node, ExprAST):
        node = node.root
    if isinstance(node, Const):
        return _fmt_const(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, (Log, Exp)):
        name = "log" if isinstance(node, Log) else "exp"
        return f"{name}({to_text(node.arg)})"
    if isinstance(node, Neg):
        return f"-{_wrap(node.arg, 3)}"
    if isinstance(node, Pow):
        e = node.exponent
        exp_s = _fmt_real(e) if e >= 0 else f"({_fmt_real(e)})"
        return f"{_wrap(node.base, 5)}^{exp_s}"
    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(node)]
    prec = _PREC[type(node)]
    left = _wrap(node.left, prec)
    # right operand of '-' and '/' needs brackets at equal precedence
    right = _wrap(node.right, prec + (1 if isinstance(node, (Sub, Div)) else 0))
    return f"{left} {op} {right}" if prec == 1 else f"{left}{op}{right}"


def _wrap(node: Node, min_prec: int) -> str:
    s = to_text(node)
    p = _PREC.get(type(node), 10)
    if isinstance(node, Const) and node.value.imag != 0:
        p = 10
    return f"({s})" if p < min_prec else s


# --------------------------------------------------------------------------- differentiation


def _diff(node: Node, var: str) -> Node:
    if isinstance(node, Const):
        return ZERO
    if isinstance(node, Var):
        return ONE if node.name == var else ZERO
    if isinstance(node, Add):
        return _add(_diff(node.left, var), _diff(node.right, var))
    if isinstance(node, Sub):
        return _sub(_diff(node.left, var), _diff(node.right, var))
    if isinstance(node, Mul):
        u, v = node.left, node.right
        return _add(_mul(_diff(u, var), v), _mul(u, _diff(v, var)))
    if isinstance(node, Div):
        u, v = node.left, node.right
        du, dv = _diff(u, var), _diff(v, var)
        if _is_const(dv, 0):
            return _div(du, v)
        return _div(_sub(_mul(du, v), _mul(u, dv)), _pow(v, 2.0))
    if isinstance(node, Neg):
        return _neg(_diff(node.arg, var))
    if isinstance(node, Pow):
        a = node.exponent
        return _mul(_mul(Const(complex(a)), _pow(node.base, a - 1.0)), _diff(node.base, var))
    if isinstance(node, Log):
        return _div(_diff(node.arg, var), node.arg)
    if isinstance(node, Exp):
        return _mul(node, _diff(node.arg, var))
    raise TypeError(f"unknown node {node!r}")  # pragma: no cover


def _substitute(node: Node, var: str, repl: Node) -> Node:
    if isinstance(node, Var):
        return repl if node.name == var else node
    if isinstance(node, Const):
        return node
    if isinstance(node, (Add, Sub, Mul, Div)):
        return type(node)(_substitute(node.left, var, repl), _substitute(node.right, var, repl))
    if isinstance(node, Neg):
        return Neg(_substitute(node.arg, var, repl))
    if isinstance(node, Pow):
        return Pow(_substitute(node.base, var, repl), node.exponent)
    if isinstance(node, (Log, Exp)):
        return type(node)(_substitute(node.arg, var, repl))
    raise TypeError(f"unknown node {node!r}")  # pragma: no cover


def _poly_degree(node: Node) -> int | None:
    """Degree when the node is a polynomial in its variable, else None."""
    if isinstance(node, Const):
        return 0
    if isinstance(node, Var):
        return 1
    if isinstance(node, (Add, Sub)):
        a, b = _poly_degree(node.left), _poly_degree(node.right)
        return None if a is None or b is None else max(a, b)
    if isinstance(node, Mul):
        a, b = _poly_degree(node.left), _poly_degree(node.right)
        return None if a is None or b is None else a + b
    if isinstance(node, Div):
        a, b = _poly_degree(node.left), _poly_degree(node.right)
        return a if b == 0 and isinstance(node.right, Const) else None
    if isinstance(node, Neg):
        return _poly_degree(node.arg)
    if isinstance(node, Pow):
        d = _poly_degree(node.base)
        e = node.exponent
        if d is None or not (e >= 0 and float(e).is_integer()):
            return None
        return d * int(e)
    return None


# --------------------------------------------------------------------------- series expansion


def _series_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[: len(a)]


def _series_div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if b[0] == 0:
        raise SingularityError("quotient is not analytic at 0")
    n = len(a)
    c = np.zeros(n, dtype=complex)
    for k in range(n):
        c[k] = (a[k] - np.dot(b[1 : k + 1], c[k - 1 :: -1][:k])) / b[0]
    return c


def _series_pow(u: np.ndarray, alpha: float) -> np.ndarray:
    n = len(u)
    if alpha >= 0 and float(alpha).is_integer():
        out = np.zeros(n, dtype=complex)
        out[0] = 1.0
        base = u.copy()
        k = int(alpha)
        while k:
            if k & 1:
                out = _series_mul(out, base)
            base = _series_mul(base, base)
            k >>= 1
        return out
    if u[0] == 0:
        raise SingularityError(f"power {alpha} is not analytic at 0")
    c = np.zeros(n, dtype=complex)
    c[0] = u[0] ** alpha
    k = np.arange(1, n)
    for m in range(1, n):
        kk = k[:m]
        c[m] = np.dot(((alpha + 1) * kk - m) * u[1 : m + 1], c[m - 1 :: -1][:m]) / (m * u[0])
    return c


def _series_log(u: np.ndarray) -> np.ndarray:
    if u[0] == 0:
        raise SingularityError("logarithm is not analytic at 0")
    n = len(u)
    du = np.arange(1, n) * u[1:]
    q = _series_div(np.append(du, 0), u)
    c = np.zeros(n, dtype=complex)
    c[0] = np.log(u[0])
    c[1:] = q[: n - 1] / np.arange(1, n)
    return c


def _series_exp(u: np.ndarray) -> np.ndarray:
    n = len(u)
    c = np.zeros(n, dtype=complex)
    c[0] = np.exp(u[0])
    ku = np.arange(n) * u
    for m in range(1, n):
        c[m] = np.dot(ku[1 : m + 1], c[m - 1 :: -1][:m]) / m
    return c


def _series_node(node: Node, n: int) -> np.ndarray:
    if isinstance(node, Const):
        out = np.zeros(n, dtype=complex)
        out[0] = node.value
        return out
    if isinstance(node, Var):
        out = np.zeros(n, dtype=complex)
        if n > 1:
            out[1] = 1.0
        return out
    if isinstance(node, Add):
        return _series_node(node.left, n) + _series_node(node.right, n)
    if isinstance(node, Sub):
        return _series_node(node.left, n) - _series_node(node.right, n)
    if isinstance(node, Mul):
        return _series_mul(_series_node(node.left, n), _series_node(node.right, n))
    if isinstance(node, Div):
        return _series_div(_series_node(node.left, n), _series_node(node.right, n))
    if isinstance(node, Neg):
        return -_series_node(node.arg, n)
    if isinstance(node, Pow):
        return _series_pow(_series_node(node.base, n), node.exponent)
    if isinstance(node, Log):
        return _series_log(_series_node(node.arg, n))
    if isinstance(node, Exp):
        return _series_exp(_series_node(node.arg, n))
    raise TypeError(f"unknown node {node!r}")  # pragma: no cover


# --------------------------------------------------------------------------- public wrapper

_PROBE_RNG_SEED = 20240601
_N_PROBES = 16


def _probe_points(var: str) -> np.ndarray:
    rng = np.random.default_rng(_PROBE_RNG_SEED)
    if var == "t":
        return rng.uniform(0.0, 0.95, _N_PROBES).astype(complex)
    r = 0.9 * np.sqrt(rng.uniform(0, 1, _N_PROBES))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, _N_PROBES))


def _check_denominators(node: Node, probes: np.ndarray, text: str):
    """Reject quotients whose denominator vanishes at every probe point."""
    stack = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Div):
            with np.errstate(all="ignore"):
                try:
                    den = _eval_node(n.right, probes)
                except SingularityError:
                    den = None
            if den is not None and np.all(den == 0):
                raise DomainError(f"denominator {to_text(n.right)!r} is identically zero in {text!r}")
        for child in ("left", "right", "arg", "base"):
            if hasattr(n, child):
                stack.append(getattr(n, child))


@dataclass(frozen=True)
class ExprAST:
    """A parsed symbol together with its source text."""

    root: Node
    source_text: str = ""
    var: str = "z"

    @classmethod
    def from_node(cls, root: Node, var: str = "z") -> "ExprAST":
        return cls(root, to_text(root), var)

    @classmethod
    def constant(cls, value, var: str = "z") -> "ExprAST":
        return cls.from_node(Const(complex(value)), var)

    @classmethod
    def variable(cls, var: str = "z") -> "ExprAST":
        return cls.from_node(Var(var), var)

    def __str__(self):
        return self.source_text or to_text(self.root)

    def __call__(self, z):
        return eval_ast(self, z)

    @cached_property
    def derivative(self) -> "ExprAST":
        return differentiate_ast(self)

    @cached_property
    def polynomial_degree(self) -> int | None:
        return _poly_degree(self.root)

    def is_constant(self) -> bool:
        return self.polynomial_degree == 0

    # arithmetic on ASTs builds new trees
    def _lift(self, other) -> Node:
        if isinstance(other, ExprAST):
            return other.root
        return Const(complex(other))

    def __add__(self, other):
        return ExprAST.from_node(_add(self.root, self._lift(other)), self.var)

    def __radd__(self, other):
        return ExprAST.from_node(_add(self._lift(other), self.root), self.var)

    def __sub__(self, other):
        return ExprAST.from_node(_sub(self.root, self._lift(other)), self.var)

    def __rsub__(self, other):
        return ExprAST.from_node(_sub(self._lift(other), self.root), self.var)

    def __mul__(self, other):
        return ExprAST.from_node(_mul(self.root, self._lift(other)), self.var)

    def __rmul__(self, other):
        return ExprAST.from_node(_mul(self._lift(other), self.root), self.var)

    def __truediv__(self, other):
        return ExprAST.from_node(_div(self.root, self._lift(other)), self.var)

    def __rtruediv__(self, other):
        return ExprAST.from_node(_div(self._lift(other), self.root), self.var)

    def __neg__(self):
        return ExprAST.from_node(_neg(self.root), self.var)

    def __pow__(self, exponent: float):
        if isinstance(exponent, complex) or isinstance(exponent, ExprAST):
            raise TypeError("only real exponents are supported")
        return ExprAST.from_node(_pow(self.root, float(exponent)), self.var)

    def compose(self, inner: "ExprAST") -> "ExprAST":
        """The symbol ``self(inner(z))``."""
        return ExprAST.from_node(_substitute(self.root, self.var, inner.root), inner.var)


def parse(text: str, var: str = "z") -> ExprAST:
    """Parse ``text`` into an :class:`ExprAST` over the variable ``var``."""
    if not isinstance(text, str):
        raise TypeError(f"expected a string, got {type(text).__name__}")
    root = _Parser(text, var).parse()
    _check_denominators(root, _probe_points(var), text)
    return ExprAST(root, text.strip(), var)


def eval_ast(e: ExprAST, z):
    """Evaluate at scalar or array ``z``; raises on any non-finite intermediate."""
    z_arr = np.asarray(z, dtype=complex)
    with np.errstate(all="ignore"):
        out = _eval_node(e.root, z_arr)
    return complex(out) if out.ndim == 0 else out


def differentiate_ast(e: ExprAST) -> ExprAST:
    return ExprAST.from_node(_diff(e.root, e.var), e.var)


def to_series(e: ExprAST, n: int = ts.DEFAULT_DEGREE_CAP) -> ts.TaylorSeries:
    """Taylor coefficients at 0 up to degree ``n`` by recursive series arithmetic."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    deg = e.polynomial_degree
    if deg is not None and deg <= n:
        return ts.TaylorSeries(_series_node(e.root, n + 1), exact=True)
    work = max(n + 1, 2 * ts.TAIL_WINDOW)
    with np.errstate(all="ignore"):
        coeffs = _series_node(e.root, work)
    if not np.all(np.isfinite(coeffs)):
        raise SingularityError(f"series of {e} is not finite")
    radius = ts.estimate_valid_radius(coeffs, degree=n)
    return ts.TaylorSeries(coeffs[: n + 1], valid_radius=radius)


@dataclass(frozen=True)
class SelfMapCheck:
    ok: bool
    max_modulus: float
    grid: int


def check_self_map(phi: ExprAST, grid: int = 64, tol: float = 1e-9) -> SelfMapCheck:
    """Sample ``|phi|`` on a polar grid refining towards the circle.

    By the maximum principle the largest modulus over a disc sits on its
    boundary circle, so the radii crowd towards 1.
    """
    radii = 1.0 - 2.0 ** -np.linspace(1.0, 40.0, grid)
    theta = 2 * np.pi * np.arange(grid) / grid
    z = radii[:, None] * np.exp(1j * theta)[None, :]
    try:
        vals = np.abs(eval_ast(phi, z))
    except SingularityError:
        return SelfMapCheck(False, float("inf"), grid)
    m = float(vals.max())
    return SelfMapCheck(m < 1.0 + tol, m, grid)


__all__ = [
    "ExprAST",
    "Node",
    "Const",
    "Var",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "Neg",
    "Pow",
    "Log",
    "Exp",
    "parse",
    "eval_ast",
    "differentiate_ast",
    "to_series",
    "to_text",
    "check_self_map",
    "SelfMapCheck",
]
