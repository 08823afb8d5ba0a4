"""Weighted composition, Volterra, Cesaro, multiplication and differentiation
operators acting on :class:`~growthops.spaces.FunctionHandle` objects."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import series as ts
from .exceptions import DomainError, SingularityError, UnsupportedError
from .expr import ExprAST, check_self_map, eval_ast, parse, to_series
from .spaces import FunctionHandle, as_handle

KINDS = ("wcomp", "volterra", "cesaro", "mult", "diff")
KIND_ALIASES = {
    "weighted_composition": "wcomp",
    "composition": "wcomp",
    "multiplication": "mult",
    "differentiation": "diff",
    "integral": "volterra",
}

# ----------------------------------------------------------------- radial quadrature

_GL_NODES, _GL_WEIGHTS = leggauss(20)


def _graded_nodes(levels: int):
    """Nodes/weights on [0, 1] from panels [1-2^(1-k), 1-2^(-k)], k=1..levels, plus [1-2^-levels, 1]."""
    edges = np.concatenate([[0.0], 1.0 - 2.0 ** -np.arange(1, levels + 1), [1.0]])
    a, b = edges[:-1], edges[1:]
    half = 0.5 * (b - a)
    t = (0.5 * (a + b))[:, None] + half[:, None] * _GL_NODES[None, :]
    w = half[:, None] * _GL_WEIGHTS[None, :]
    return t.ravel(), w.ravel()


def radial_integral(func, z, t_power: int = 0):
    """``int_0^1 t**t_power * func(t z) dt`` for every ``z``.

    Panels are graded geometrically towards t = 1 down to a fraction of
    ``1 - |z|`` so integrands with singularities just outside the circle
    stay resolved.
    """
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    out = np.empty(flat.shape, dtype=complex)
    gap_ = np.maximum(1.0 - np.abs(flat), 2.0 ** -52)
    levels = np.clip(np.ceil(np.log2(1.0 / gap_)).astype(int) + 4, 4, 56)
    for lev in np.unique(levels):
        idx = np.nonzero(levels == lev)[0]
        t, w = _graded_nodes(int(lev))
        if t_power:
            w = w * t ** t_power
        # chunk to bound memory
        step = max(1, 2_000_000 // len(t))
        for start in range(0, len(idx), step):
            sel = idx[start : start + step]
            pts = flat[sel][:, None] * t[None, :]
            out[sel] = np.asarray(func(pts)) @ w
    return out.reshape(z.shape)


# ----------------------------------------------------------------- operator symbols


def _as_ast(x, name: str) -> ExprAST | None:
    if x is None:
        return None
    if isinstance(x, ExprAST):
        return x
    if isinstance(x, (int, float, complex)):
        return ExprAST.constant(x)
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"{name} must be an expression, got {type(x).__name__}")


@dataclass(frozen=True, eq=False)
class OperatorSymbol:
    """An operator together with its defining symbols.

    ``wcomp``: ``f -> u * (f o phi)``; ``volterra``: ``f -> int_0^z f g'``;
    ``cesaro``: ``f -> (1/z) int_0^z f g'``; ``mult``: ``f -> h f``;
    ``diff``: ``f -> f'``.
    """

    kind: str
    u: ExprAST | None = None
    phi: ExprAST | None = None
    g: ExprAST | None = None
    h: ExprAST | None = None

    def __post_init__(self):
        kind = KIND_ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise DomainError(f"unknown operator kind {self.kind!r}; expected one of {KINDS}")
        object.__setattr__(self, "kind", kind)
        for name in ("u", "phi", "g", "h"):
            object.__setattr__(self, name, _as_ast(getattr(self, name), name))
        if kind == "wcomp":
            if self.u is None:
                object.__setattr__(self, "u", ExprAST.constant(1.0))
            if self.phi is None:
                raise DomainError("weighted composition needs phi")
            check = check_self_map(self.phi)
            if not check.ok:
                raise DomainError(
                    f"phi = {self.phi} is not a self-map of the disk: max |phi| = {check.max_modulus:.6g} on the sampling grid"
                )
        elif kind in ("volterra", "cesaro"):
            if self.g is None:
                raise DomainError(f"{kind} operator needs a symbol g")
            try:
                to_series(self.g, 4)
            except SingularityError as exc:
                raise DomainError(f"g = {self.g} is not analytic at 0: {exc}") from exc
        elif kind == "mult" and self.h is None:
            raise DomainError("multiplication operator needs a multiplier h")

    @classmethod
    def weighted_composition(cls, u, phi) -> "OperatorSymbol":
        return cls("wcomp", u=u, phi=phi)

    @classmethod
    def volterra(cls, g) -> "OperatorSymbol":
        return cls("volterra", g=g)

    @classmethod
    def cesaro(cls, g) -> "OperatorSymbol":
        return cls("cesaro", g=g)

    @classmethod
    def multiplication(cls, h) -> "OperatorSymbol":
        return cls("mult", h=h)

    @classmethod
    def differentiation(cls) -> "OperatorSymbol":
        return cls("diff")

    @classmethod
    def from_dict(cls, spec: dict) -> "OperatorSymbol":
        """Build from ``{"kind": ..., "g": ..., "u": ..., "phi": ..., "h": ...}``."""
        if "kind" not in spec:
            raise DomainError("operator spec needs a 'kind'")
        unknown = set(spec) - {"kind", "g", "u", "phi", "h"}
        if unknown:
            raise DomainError(f"unknown operator fields {sorted(unknown)}")
        return cls(spec["kind"], u=spec.get("u"), phi=spec.get("phi"), g=spec.get("g"), h=spec.get("h"))

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for name in ("u", "phi", "g", "h"):
            val = getattr(self, name)
            if val is not None:
                out[name] = str(val)
        return out

    @cached_property
    def g_prime(self) -> ExprAST | None:
        return None if self.g is None else self.g.derivative

    def __str__(self):
        args = ", ".join(f"{k}={v}" for k, v in self.to_dict().items() if k != "kind")
        return f"{self.kind}({args})"

    def __call__(self, f) -> FunctionHandle:
        return apply(self, f)


# ----------------------------------------------------------------- application


def _series_of(f: FunctionHandle, degree: int) -> ts.TaylorSeries | None:
    if f.series is not None:
        return f.series
    if f.ast is not None:
        try:
            return to_series(f.ast, degree)
        except SingularityError:
            return None
    return None


def _symbol_series(e: ExprAST, like: ts.TaylorSeries | None, degree: int) -> ts.TaylorSeries:
    if like is not None and not like.exact:
        degree = like.degree_cap
    return to_series(e, degree)


def _hybrid(series: ts.TaylorSeries | None, pointwise):
    """Use the series well inside its radius and ``pointwise`` elsewhere."""
    if series is None:
        return pointwise
    if series.exact:
        return lambda z: ts.evaluate(series, z)
    inner = 0.9 * series.valid_radius

    def evaluate(z):
        z = np.asarray(z, dtype=complex)
        near = np.abs(z) <= inner
        if np.all(near):
            return ts.evaluate(series, z)
        out = np.empty(z.shape, dtype=complex)
        out[near] = ts.evaluate(series, z[near])
        out[~near] = pointwise(z[~near])
        return out

    return evaluate


def _need_pointwise(f: FunctionHandle, what: str):
    if not f.boundary_capable:
        raise UnsupportedError(
            f"{what} needs a pointwise evaluator for {f.label} on the whole disk; only a truncated series is available"
        )


def apply(T: OperatorSymbol, f, degree: int = ts.DEFAULT_DEGREE_CAP) -> FunctionHandle:
    """Image ``T f`` as a handle carrying a series when one is legal and a
    pointwise evaluator whenever ``f`` can be evaluated up to the circle."""
    f = as_handle(f)
    fs = _series_of(f, degree)
    label = f"{T.kind}[{f.label}]"

    if T.kind == "diff":
        s = ts.derivative(fs) if fs is not None else None
        if f.ast is not None:
            return FunctionHandle(ast=f.ast.derivative, series=s, label=label, check_agreement=False)
        if f.derivative_evaluator is not None:
            return FunctionHandle(series=s, evaluator=f.derivative_evaluator, label=label)
        if s is None:
            raise UnsupportedError(f"differentiation needs a series or derivative evaluator for {f.label}")
        return FunctionHandle(series=s, label=label)

    if T.kind == "mult":
        s = ts.multiply(_symbol_series(T.h, fs, degree), fs) if fs is not None else None
        if f.ast is not None:
            return FunctionHandle(ast=T.h * f.ast, series=s, label=label, check_agreement=False)
        if f.boundary_capable:
            hp = T.h.derivative
            return FunctionHandle(
                series=s,
                evaluator=lambda z: eval_ast(T.h, z) * f.value(z),
                derivative_evaluator=lambda z: eval_ast(hp, z) * f.value(z) + eval_ast(T.h, z) * f.deriv(z),
                label=label,
            )
        return FunctionHandle(series=s, label=label)

    if T.kind == "wcomp":
        s = None
        if fs is not None:
            phi_s = _symbol_series(T.phi, fs, degree)
            if abs(phi_s.coeffs[0]) <= 1e-14:
                s = ts.multiply(_symbol_series(T.u, fs, degree), ts.compose_at_zero(fs, phi_s))
        if f.ast is not None:
            return FunctionHandle(ast=T.u * f.ast.compose(T.phi), series=s, label=label, check_agreement=False)
        if s is None or f.boundary_capable:
            _need_pointwise(f, "weighted composition with phi(0) != 0")
        if not f.boundary_capable:
            return FunctionHandle(series=s, label=label)
        up, phip = T.u.derivative, T.phi.derivative

        def value(z):
            return eval_ast(T.u, z) * f.value(eval_ast(T.phi, z))

        def deriv(z):
            w = eval_ast(T.phi, z)
            return eval_ast(up, z) * f.value(w) + eval_ast(T.u, z) * eval_ast(phip, z) * f.deriv(w)

        return FunctionHandle(series=s, evaluator=value, derivative_evaluator=deriv, label=label)

    # Volterra and Cesaro share the integrand f g'
    gp = T.g_prime
    s = None
    if fs is not None:
        m = ts.multiply(fs, _symbol_series(gp, fs, degree))
        if T.kind == "volterra":
            s = ts.antiderivative(m)
        else:
            # coefficient n of (1/z) int_0^z m is m_n / (n + 1)
            coeffs = m.coeffs / np.arange(1, len(m) + 1)
            s = ts.TaylorSeries(coeffs, m.valid_radius, m.exact)
    if not f.boundary_capable:
        if s is None:
            raise UnsupportedError(f"{T.kind} needs a series or pointwise evaluator for {f.label}")
        return FunctionHandle(series=s, label=label)

    if f.ast is not None:
        integrand = f.ast * gp
        d_integrand = integrand.derivative

        def m_val(w):
            return eval_ast(integrand, w)

        def m_der(w):
            return eval_ast(d_integrand, w)

    else:
        gpp = gp.derivative

        def m_val(w):
            return f.value(w) * eval_ast(gp, w)

        def m_der(w):
            return f.deriv(w) * eval_ast(gp, w) + f.value(w) * eval_ast(gpp, w)

    if T.kind == "volterra":

        def value(z):
            z = np.asarray(z, dtype=complex)
            return z * radial_integral(m_val, z)

        return FunctionHandle(series=s, evaluator=_hybrid(s, value), derivative_evaluator=m_val, label=label)

    def value(z):
        return radial_integral(m_val, z)

    def deriv(z):
        return radial_integral(m_der, z, t_power=1)

    ds = ts.derivative(s) if s is not None else None
    return FunctionHandle(series=s, evaluator=_hybrid(s, value), derivative_evaluator=_hybrid(ds, deriv), label=label)


def shift_relation_residual(g, f, degree: int = ts.DEFAULT_DEGREE_CAP) -> float:
    """Largest coefficient gap between ``T_g f`` and ``z * C_g f``."""
    g = _as_ast(g, "g")
    f = as_handle(f)
    if _series_of(f, degree) is None:
        raise UnsupportedError(f"shift relation needs a series for {f.label}")
    tv = apply(OperatorSymbol.volterra(g), f, degree).series
    cs = apply(OperatorSymbol.cesaro(g), f, degree).series
    shifted = np.concatenate([[0.0], cs.coeffs])
    n = max(len(tv), len(shifted))
    a = np.zeros(n, dtype=complex)
    b = np.zeros(n, dtype=complex)
    a[: len(tv)] = tv.coeffs
    b[: len(shifted)] = shifted
    return float(np.max(np.abs(a - b)))


def operator_from_spec(spec) -> OperatorSymbol:
    if isinstance(spec, OperatorSymbol):
        return spec
    if isinstance(spec, dict):
        return OperatorSymbol.from_dict(spec)
    raise TypeError(f"cannot build an operator from {type(spec).__name__}")


__all__ = [
    "OperatorSymbol",
    "apply",
    "shift_relation_residual",
    "radial_integral",
    "operator_from_spec",
    "KINDS",
]
