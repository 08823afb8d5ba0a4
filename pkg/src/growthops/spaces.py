"""Function spaces on the disk: norms by quadrature, point-evaluation norms,
membership in the little growth spaces."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi

from . import series as ts
from ._config import DEFAULT_NORM_GRID, DEFAULT_TOLERANCES, NormGrid, Tolerances
from .asymptotics import RayFit, fit_rays, limit_verdict
from .exceptions import DomainError, SingularityError, UnsupportedError
from .expr import ExprAST, eval_ast, parse
from .weights import Weight, gap, parse_weight

SPACE_KINDS = ("hardy", "bergman", "growth", "bloch")


@dataclass(frozen=True)
class SpaceDescriptor:
    """One of ``H^p``, ``A^p_alpha``, ``H_v`` or ``B_v`` (optionally little)."""

    kind: str
    p: float | None = None
    alpha: float | None = None
    weight: Weight | None = None
    little: bool = False

    def __post_init__(self):
        if self.kind not in SPACE_KINDS:
            raise DomainError(f"unknown space kind {self.kind!r}")
        if self.kind == "hardy":
            if self.p is None or not self.p > 1:
                raise DomainError(f"Hardy spaces need p > 1, got {self.p}")
        elif self.kind == "bergman":
            if self.p is None or not self.p > 0:
                raise DomainError(f"Bergman spaces need p > 0, got {self.p}")
            if self.alpha is None or not self.alpha > -1:
                raise DomainError(f"Bergman spaces need alpha > -1, got {self.alpha}")
        elif self.weight is None:
            raise DomainError(f"{self.kind} spaces need a weight")
        if self.little and self.kind not in ("growth", "bloch"):
            raise DomainError("only growth and Bloch-type spaces have little subspaces")

    @classmethod
    def hardy(cls, p: float) -> "SpaceDescriptor":
        return cls("hardy", p=float(p))

    @classmethod
    def bergman(cls, p: float, alpha: float = 0.0) -> "SpaceDescriptor":
        return cls("bergman", p=float(p), alpha=float(alpha))

    @classmethod
    def growth(cls, weight: Weight | float, little: bool = False) -> "SpaceDescriptor":
        if not isinstance(weight, Weight):
            weight = Weight.power(weight)
        return cls("growth", weight=weight, little=little)

    @classmethod
    def bloch(cls, weight: Weight | float, little: bool = False) -> "SpaceDescriptor":
        if not isinstance(weight, Weight):
            weight = Weight.power(weight)
        return cls("bloch", weight=weight, little=little)

    @property
    def name(self) -> str:
        if self.kind == "hardy":
            return f"hardy:{_fmt(self.p)}"
        if self.kind == "bergman":
            return f"bergman:{_fmt(self.p)}:{_fmt(self.alpha)}"
        suffix = ":little" if self.little else ""
        return f"{self.kind}:{self.weight.name}{suffix}"

    @property
    def power_beta(self) -> float | None:
        """Exponent of a classical power weight, else None."""
        if self.weight is not None and self.weight.kind == "power":
            return self.weight.beta
        return None

    @property
    def point_eval_kind(self) -> str:
        """``exact``, ``equivalent`` (up to constants) or ``upper_bound``."""
        if self.kind in ("hardy", "bergman"):
            return "exact"
        if self.kind == "growth":
            return "exact" if self.power_beta is not None else "upper_bound"
        if self.power_beta is None:
            raise UnsupportedError(f"no point-evaluation formula for {self.name}")
        return "equivalent"

    @property
    def point_eval_growth(self) -> tuple[float, bool]:
        """``(d, log)`` with ``||delta_z|| ~ (1-|z|^2)**-d`` times ``log(1/(1-|z|^2))`` if ``log``."""
        if self.kind == "hardy":
            return 1.0 / self.p, False
        if self.kind == "bergman":
            return (2.0 + self.alpha) / self.p, False
        beta = self.power_beta
        if beta is None:
            raise UnsupportedError(f"no closed-form point-evaluation growth for {self.name}")
        if self.kind == "growth":
            return beta, False
        if beta < 1:
            return 0.0, False
        if beta == 1:
            return 0.0, True
        return beta - 1.0, False

    def __str__(self):
        return self.name


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def parse_space(name: str) -> SpaceDescriptor:
    """``hardy:p``, ``bergman:p:alpha``, ``growth:<weight>``, ``bloch:<weight>``, optional ``:little``."""
    text = name.strip()
    little = text.endswith(":little")
    if little:
        text = text[: -len(":little")]
    kind, _, rest = text.partition(":")
    try:
        if kind == "hardy":
            space = SpaceDescriptor.hardy(float(rest))
        elif kind == "bergman":
            p, _, alpha = rest.partition(":")
            space = SpaceDescriptor.bergman(float(p), float(alpha) if alpha else 0.0)
        elif kind in ("growth", "bloch"):
            space = SpaceDescriptor(kind, weight=parse_weight(rest), little=little)
            little = False
        else:
            raise DomainError(f"unknown space {name!r}")
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"cannot parse space {name!r}: {exc}") from exc
    if little:
        raise DomainError(f"{kind} spaces have no little subspace")
    return space


# --------------------------------------------------------------------------- point evaluations


def point_eval_radial(X: SpaceDescriptor, r, one_minus_r2=None):
    """Point-evaluation norm as a function of ``|z|``; vectorised."""
    g = gap(r) if one_minus_r2 is None else np.asarray(one_minus_r2, dtype=float)
    if X.kind == "growth" and X.power_beta is None:
        return 1.0 / X.weight.radial(r, g)
    d, has_log = X.point_eval_growth
    out = g ** (-d) if d else np.ones_like(g)
    if has_log:
        out = out * np.log(1.0 / g)
    return out


def point_eval_norm(X: SpaceDescriptor, z) -> float:
    """Norm of ``f -> f(z)`` on ``X``.

    Hardy, Bergman and classical growth spaces give the exact value.  For
    Bloch-type spaces the value is the comparison function, valid up to
    unknown constants (``X.point_eval_kind == "equivalent"``); for growth
    spaces with other weights it is the upper bound ``1/v(z)``.
    """
    r = np.abs(np.asarray(z, dtype=complex))
    if np.any(r >= 1):
        raise DomainError("point evaluation is defined on the open disk only")
    X.point_eval_kind  # raises for unsupported descriptors
    out = point_eval_radial(X, r)
    return float(out) if np.ndim(out) == 0 else out


# --------------------------------------------------------------------------- function handles


@dataclass(frozen=True, eq=False)
class FunctionHandle:
    """A holomorphic function as a closed form, a truncated series, a
    pointwise evaluator, or several of these at once."""

    ast: ExprAST | None = None
    series: ts.TaylorSeries | None = None
    evaluator: Callable | None = field(default=None, repr=False)
    derivative_evaluator: Callable | None = field(default=None, repr=False)
    label: str = ""
    check_agreement: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.ast is None and self.series is None and self.evaluator is None:
            raise ValueError("a function handle needs an AST, a series or an evaluator")
        if not self.label:
            label = str(self.ast) if self.ast is not None else "series" if self.series is not None else "f"
            object.__setattr__(self, "label", label)
        if self.check_agreement and self.ast is not None and self.series is not None:
            self._check_representations()

    def _check_representations(self, n: int = 8, tol: float = 1e-8):
        rho = 0.5 * self.series.valid_radius
        z = rho * np.exp(2j * np.pi * np.arange(n) / n)
        a = eval_ast(self.ast, z)
        b = ts.evaluate(self.series, z)
        scale = max(1.0, float(np.max(np.abs(a))))
        if np.max(np.abs(a - b)) > tol * scale:
            raise DomainError(f"series and closed form of {self.label} disagree at probe points")

    @classmethod
    def from_text(cls, text: str) -> "FunctionHandle":
        return cls(ast=parse(text))

    @classmethod
    def from_ast(cls, ast: ExprAST, with_series: bool = False, degree: int = ts.DEFAULT_DEGREE_CAP) -> "FunctionHandle":
        s = None
        if with_series:
            from .expr import to_series

            s = to_series(ast, degree)
        return cls(ast=ast, series=s)

    @classmethod
    def from_series(cls, series: ts.TaylorSeries, label: str = "") -> "FunctionHandle":
        return cls(series=series, label=label)

    @property
    def boundary_capable(self) -> bool:
        """True when values can be computed arbitrarily close to the circle."""
        return self.ast is not None or self.evaluator is not None or (
            self.series is not None and self.series.exact
        )

    @property
    def reach(self) -> float:
        """Radius up to which values are available."""
        return 1.0 if self.boundary_capable else self.series.valid_radius

    def value(self, z):
        if self.ast is not None:
            return eval_ast(self.ast, z)
        if self.evaluator is not None:
            return self.evaluator(np.asarray(z, dtype=complex))
        return ts.evaluate(self.series, z)

    def deriv(self, z):
        if self.ast is not None:
            return eval_ast(self.ast.derivative, z)
        if self.derivative_evaluator is not None:
            return self.derivative_evaluator(np.asarray(z, dtype=complex))
        if self.series is not None:
            return ts.evaluate(self._series_derivative, z)
        raise UnsupportedError(f"{self.label} has no derivative evaluator")

    @cached_property
    def _series_derivative(self):
        return ts.derivative(self.series)

    def __call__(self, z):
        return self.value(z)


def as_handle(f) -> FunctionHandle:
    if isinstance(f, FunctionHandle):
        return f
    if isinstance(f, ExprAST):
        return FunctionHandle(ast=f)
    if isinstance(f, ts.TaylorSeries):
        return FunctionHandle(series=f)
    if isinstance(f, str):
        return FunctionHandle.from_text(f)
    raise TypeError(f"cannot make a function handle from {type(f).__name__}")


# --------------------------------------------------------------------------- norms


@dataclass(frozen=True)
class NormEstimate:
    value: float
    converged: bool
    unbounded: bool
    grid: dict

    def __float__(self):
        return float(self.value)

    def as_dict(self) -> dict:
        return {
            "value": float(self.value) if math.isfinite(self.value) else "inf",
            "converged": bool(self.converged),
            "unbounded": bool(self.unbounded),
            "grid": self.grid,
        }


def _values(f: FunctionHandle, z, derivative: bool):
    try:
        return f.deriv(z) if derivative else f.value(z)
    except SingularityError as exc:
        raise SingularityError(f"{f.label} is singular on the quadrature grid: {exc}") from exc


def _growth_flags(levels: np.ndarray, rel_tol: float = 1e-6) -> tuple[bool, bool]:
    """(converged, unbounded) from a monotone sequence of refinements."""
    if len(levels) < 3 or not np.all(np.isfinite(levels)):
        return False, not np.all(np.isfinite(levels))
    d1 = levels[-1] - levels[-2]
    d2 = levels[-2] - levels[-3]
    scale = max(abs(levels[-1]), 1e-300)
    if d1 <= rel_tol * scale:
        return True, False
    return False, bool(d1 > 0.75 * d2)


def _circle_mean(f: FunctionHandle, r: float, p: float, m0: int, m_max: int, rel_tol: float = 1e-12):
    """Mean of ``|f|^p`` on ``|z| = r`` by the trapezoid rule, doubling until settled."""
    m = m0
    theta = 2 * np.pi * np.arange(m) / m
    total = np.sum(np.abs(_values(f, r * np.exp(1j * theta), False)) ** p)
    mean = total / m
    while m < m_max:
        mid = 2 * np.pi * (np.arange(m) + 0.5) / m
        total += np.sum(np.abs(_values(f, r * np.exp(1j * mid), False)) ** p)
        m *= 2
        new = total / m
        if abs(new - mean) <= rel_tol * max(abs(new), 1e-300):
            return new, m
        mean = new
    return mean, m


def _hardy_norm(X: SpaceDescriptor, f: FunctionHandle, grid: NormGrid) -> NormEstimate:
    p = X.p
    j = np.arange(0, grid.hardy_max_j + 1)
    radii = 1.0 - 2.0 ** -j
    radii = radii[radii <= f.reach]
    means, used = [], []
    for r in radii:
        mean, m = _circle_mean(f, float(r), p, grid.hardy_angles, grid.hardy_max_angles)
        means.append(mean)
        used.append(m)
    levels = np.maximum.accumulate(np.asarray(means) ** (1.0 / p))
    converged, unbounded = _growth_flags(levels)
    info = {
        "kind": "hardy",
        "p": p,
        "radii": len(radii),
        "max_radius": float(radii[-1]),
        "angles_min": int(min(used)),
        "angles_max": int(max(used)),
    }
    value = math.inf if unbounded else float(levels[-1])
    return NormEstimate(value, converged and radii[-1] > 0.999, unbounded, info)


def bergman_nodes(n: int, alpha: float):
    """Nodes ``s`` in (0, 1) and weights for ``int_0^1 F(s) (alpha+1)(1-s)^alpha ds``."""
    x, w = roots_jacobi(n, alpha, 0.0)
    s = 0.5 * (x + 1.0)
    weights = w * (alpha + 1.0) / 2.0 ** (alpha + 1.0)
    return s, weights


def _bergman_norm(X: SpaceDescriptor, f: FunctionHandle, grid: NormGrid) -> NormEstimate:
    s, w = bergman_nodes(grid.bergman_radial, X.alpha)
    if np.sqrt(s[-1]) > f.reach:
        raise DomainError(f"{f.label}: series radius {f.reach:.4g} does not cover the Bergman quadrature")
    theta = 2 * np.pi * np.arange(grid.bergman_angles) / grid.bergman_angles
    z = np.sqrt(s)[:, None] * np.exp(1j * theta)[None, :]
    vals = np.abs(_values(f, z, False)) ** X.p
    total = float(np.dot(w, vals.mean(axis=1)))
    info = {"kind": "bergman", "p": X.p, "alpha": X.alpha, "radial_nodes": grid.bergman_radial, "angles": grid.bergman_angles}
    if not math.isfinite(total):
        return NormEstimate(math.inf, False, True, info)
    return NormEstimate(total ** (1.0 / X.p), True, False, info)


def sup_grid(grid: NormGrid, reach: float = 1.0):
    """Nested polar grid for sup norms: uniform plus geometric radii.

    Returns ``(z, r, one_minus_r2)`` flattened; doubling every resolution
    parameter yields a superset.
    """
    uniform = np.arange(grid.sup_uniform) / grid.sup_uniform
    k = np.arange(1, grid.sup_max_octave * grid.sup_per_octave + 1)
    geometric = 1.0 - 2.0 ** (-k / grid.sup_per_octave)
    h = 1.0 - geometric  # exact for r >= 1/2, matches the rounded radius
    r = np.concatenate([uniform, geometric])
    g = np.concatenate([gap(uniform), h * (2.0 - h)])
    keep = r <= reach
    r, g = r[keep], g[keep]
    theta = 2 * np.pi * np.arange(grid.sup_angles) / grid.sup_angles
    z = r[:, None] * np.exp(1j * theta)[None, :]
    rr = np.broadcast_to(r[:, None], z.shape)
    gg = np.broadcast_to(g[:, None], z.shape)
    return z.ravel(), rr.ravel(), gg.ravel()


def _sup_norm(X: SpaceDescriptor, f: FunctionHandle, grid: NormGrid, extra_points=None) -> NormEstimate:
    derivative = X.kind == "bloch"
    z, r, g = sup_grid(grid, f.reach)
    vals = X.weight.radial(r, g) * np.abs(_values(f, z, derivative))
    sup = float(np.max(vals))
    arg = complex(z[int(np.argmax(vals))])
    if extra_points is not None:
        ez = np.atleast_1d(np.asarray(extra_points, dtype=complex))
        ev = X.weight.radial(np.abs(ez)) * np.abs(_values(f, ez, derivative))
        if ev.max() > sup:
            sup = float(ev.max())
            arg = complex(ez[int(np.argmax(ev))])
    # growth of the per-octave maxima decides whether the sup is finite
    n_uniform = int(np.sum(np.arange(grid.sup_uniform) / grid.sup_uniform <= f.reach))
    per_radius = vals.reshape(-1, grid.sup_angles).max(axis=1)[n_uniform:]
    octave_max = per_radius[grid.sup_per_octave - 1 :: grid.sup_per_octave]
    converged, unbounded = True, False
    if len(octave_max) >= 12:
        tail = octave_max[-12:]
        hh = 2.0 ** -np.arange(len(octave_max) - 11, len(octave_max) + 1, dtype=float)
        if np.all(tail > 0):
            slope = np.polyfit(np.log(hh), np.log(tail), 1)[0]
            if slope < -DEFAULT_TOLERANCES.eps_fit:
                unbounded, converged = True, False
    info = {
        "kind": X.kind,
        "weight": X.weight.name,
        "angles": grid.sup_angles,
        "uniform_radii": grid.sup_uniform,
        "per_octave": grid.sup_per_octave,
        "octaves": grid.sup_max_octave,
        "argmax": [arg.real, arg.imag],
    }
    if f.reach < 1.0:
        converged = False
        info["reach"] = f.reach
    return NormEstimate(sup, converged, unbounded, info)


def space_norm(X: SpaceDescriptor, f, grid: NormGrid = DEFAULT_NORM_GRID, extra_points=None) -> NormEstimate:
    """Norm (seminorm for Bloch-type spaces) of ``f`` in ``X``.

    ``extra_points`` adds sample points to the sup grids of growth and
    Bloch-type spaces.
    """
    f = as_handle(f)
    if X.kind == "hardy":
        return _hardy_norm(X, f, grid)
    if X.kind == "bergman":
        return _bergman_norm(X, f, grid)
    return _sup_norm(X, f, grid, extra_points)


# --------------------------------------------------------------------------- little spaces


@dataclass(frozen=True)
class MembershipVerdict:
    status: str  # "member" | "not_member" | "inconclusive"
    limit_estimate: float
    max_exponent: float
    min_exponent: float
    fits: tuple = field(repr=False, default=())
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "limit_estimate": float(self.limit_estimate) if math.isfinite(self.limit_estimate) else (
                "inf" if self.limit_estimate > 0 else None
            ),
            "min_exponent": self.min_exponent,
            "max_exponent": self.max_exponent,
            "note": self.note,
        }


def ray_samples(fn: Callable, n_rays: int, max_j: int, j_min: int = 1):
    """Sample ``fn(z, r, one_minus_r2)`` on rays ``2 pi k / n_rays`` at ``r = 1 - 2**-j``."""
    j = np.arange(j_min, max_j + 1)
    h = 2.0 ** -j.astype(float)
    r = 1.0 - h
    g = h * (2.0 - h)
    theta = 2 * np.pi * np.arange(n_rays) / n_rays
    z = r[None, :] * np.exp(1j * theta)[:, None]
    z[0] = r  # exact real ray
    rr = np.broadcast_to(r, z.shape)
    gg = np.broadcast_to(g, z.shape)
    return theta, j, h, z, np.asarray(fn(z, rr, gg), dtype=float)


def little_space_membership(
    f,
    X: SpaceDescriptor,
    n_rays: int = 32,
    max_j: int = 40,
    window: int = 12,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> MembershipVerdict:
    """Evidence for ``f`` in ``H_{v,0}`` (or ``B_{v,0}``): does ``v|f|`` (``v|f'|``) vanish at the circle?"""
    if not X.little:
        raise DomainError(f"{X.name} is not a little space")
    f = as_handle(f)
    if not f.boundary_capable:
        raise UnsupportedError(f"{f.label} cannot be evaluated near the boundary")
    derivative = X.kind == "bloch"

    def quantity(z, r, g):
        return X.weight.radial(r, g) * np.abs(_values(f, z, derivative))

    _, _, h, _, vals = ray_samples(quantity, n_rays, max_j)
    fits = fit_rays(h, vals, window, tol)
    verdict = limit_verdict(fits, tol)
    exps = [ft.exponent for ft in fits if ft.reliable]
    status = {"yes": "member", "no": "not_member"}.get(verdict.status, "inconclusive")
    return MembershipVerdict(
        status,
        verdict.limit,
        float(max(exps)) if exps else math.nan,
        float(min(exps)) if exps else math.nan,
        tuple(fits),
        verdict.note,
    )


__all__ = [
    "SpaceDescriptor",
    "FunctionHandle",
    "NormEstimate",
    "MembershipVerdict",
    "RayFit",
    "parse_space",
    "point_eval_norm",
    "point_eval_radial",
    "space_norm",
    "little_space_membership",
    "as_handle",
    "sup_grid",
    "ray_samples",
    "bergman_nodes",
]
