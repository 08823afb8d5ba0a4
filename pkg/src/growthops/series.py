"""Truncated Taylor series with complex coefficients.

A :class:`TaylorSeries` stores ``a_0 .. a_N`` together with the radius inside
which the discarded tail is certified small.  Polynomials are marked ``exact``;
their tail is zero and products keep every term.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from ._config import DEFAULT_TOLERANCES
from .exceptions import DomainError, UnsupportedError

DEFAULT_DEGREE_CAP = 256
TAIL_WINDOW = 8


def estimate_valid_radius(coeffs, tol: float = DEFAULT_TOLERANCES.series, degree: int | None = None) -> float:
    """Largest radius in (0, 1] at which the extrapolated tail stays below ``tol``.

    The last ``TAIL_WINDOW`` coefficient magnitudes are fitted by
    ``|a_k| ~ A * rho**k``; the tail beyond ``degree`` (default: the last
    index) at radius r is then bounded by ``|a_n| r**n * q / (1 - q)`` with
    ``q = rho * r``.
    """
    a = np.abs(np.asarray(coeffs, dtype=complex))
    n_all = len(a) - 1
    n = n_all if degree is None else int(degree)
    if n_all + 1 < TAIL_WINDOW or not np.any(a[-TAIL_WINDOW:]):
        return 1.0
    k = np.arange(n_all + 1 - TAIL_WINDOW, n_all + 1)
    mags = a[-TAIL_WINDOW:]
    logs = np.log(np.maximum(mags, mags.max() * 1e-300))
    slope, intercept = np.polyfit(k, logs, 1)
    log_last = intercept + slope * n
    if n <= n_all and a[n] > 0:
        log_last = max(log_last, np.log(a[n]))
    rho = float(np.exp(slope))

    def tail(r):
        # sum_{k>n} |a_n| rho^(k-n) r^k
        q = rho * r
        if q >= 1.0:
            return np.inf
        return float(np.exp(log_last + n * np.log(r)) * q / (1.0 - q))

    if tail(1.0) < tol:
        return 1.0
    lo, hi = 0.0, min(1.0, 1.0 / rho)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if tail(mid) < tol:
            lo = mid
        else:
            hi = mid
    return max(lo, np.finfo(float).tiny)


@dataclass(frozen=True)
class TaylorSeries:
    """Coefficients ``a_0 .. a_N`` of a function holomorphic near 0.

    ``valid_radius`` is estimated from the coefficient tail when not given.
    Coefficient lists shorter than the tail window carry no tail information
    and are treated as polynomials unless a radius is passed explicitly.
    """

    coeffs: np.ndarray
    valid_radius: float | None = None
    exact: bool = False
    tol: float = field(default=DEFAULT_TOLERANCES.series, repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        exact = bool(self.exact) or (c.size < TAIL_WINDOW and self.valid_radius is None)
        object.__setattr__(self, "exact", exact)
        if exact:
            radius = 1.0
        elif self.valid_radius is None:
            radius = estimate_valid_radius(c, self.tol)
        else:
            radius = float(self.valid_radius)
        if not 0.0 < radius <= 1.0:
            raise DomainError(f"valid_radius must lie in (0, 1], got {radius}")
        object.__setattr__(self, "valid_radius", radius)

    @classmethod
    def polynomial(cls, coeffs) -> "TaylorSeries":
        return cls(coeffs, exact=True)

    @classmethod
    def constant(cls, value) -> "TaylorSeries":
        return cls([value], exact=True)

    @property
    def degree_cap(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        if not isinstance(other, TaylorSeries):
            other = TaylorSeries.constant(other)
        return _combine(self, other, 1.0, 1.0)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, TaylorSeries):
            other = TaylorSeries.constant(other)
        return _combine(self, other, 1.0, -1.0)

    def __neg__(self):
        return self.scaled(-1.0)

    def __mul__(self, other):
        if isinstance(other, TaylorSeries):
            return multiply(self, other)
        return self.scaled(other)

    __rmul__ = __mul__

    def scaled(self, factor) -> "TaylorSeries":
        return TaylorSeries(self.coeffs * factor, self.valid_radius, self.exact, self.tol)

    def truncated(self, degree: int) -> "TaylorSeries":
        keep = self.exact and degree >= self.degree_cap
        return TaylorSeries(self.coeffs[: degree + 1], self.valid_radius, keep, self.tol)


def _result_cap(*series: TaylorSeries) -> int | None:
    caps = [s.degree_cap for s in series if not s.exact]
    return min(caps) if caps else None


def _combine(f: TaylorSeries, g: TaylorSeries, alpha, beta) -> TaylorSeries:
    n = max(len(f), len(g))
    cap = _result_cap(f, g)
    out = np.zeros(n, dtype=complex)
    out[: len(f)] += alpha * f.coeffs
    out[: len(g)] += beta * g.coeffs
    if cap is not None:
        out = out[: cap + 1]
    return TaylorSeries(out, min(f.valid_radius, g.valid_radius), cap is None, f.tol)


def evaluate(f: TaylorSeries, z):
    """Sum of ``a_k z**k`` by Horner's rule; scalar or array ``z``."""
    z_arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(z_arr) > f.valid_radius * (1 + 1e-15)):
        raise DomainError(
            f"|z| = {np.max(np.abs(z_arr)):.6g} exceeds the series valid radius {f.valid_radius:.6g}"
        )
    out = P.polyval(z_arr, f.coeffs)
    return complex(out) if np.ndim(out) == 0 else out


def derivative(f: TaylorSeries) -> TaylorSeries:
    if f.degree_cap == 0:
        return TaylorSeries([0.0], exact=True, tol=f.tol) if f.exact else TaylorSeries([0.0], 1.0, tol=f.tol)
    k = np.arange(1, len(f))
    return TaylorSeries(k * f.coeffs[1:], f.valid_radius, f.exact, f.tol)


def antiderivative(f: TaylorSeries) -> TaylorSeries:
    """Integral from 0: ``b_0 = 0``, ``b_{k+1} = a_k / (k+1)``."""
    out = np.zeros(len(f) + 1, dtype=complex)
    out[1:] = f.coeffs / np.arange(1, len(f) + 1)
    return TaylorSeries(out, f.valid_radius, f.exact, f.tol)


def multiply(f: TaylorSeries, g: TaylorSeries) -> TaylorSeries:
    """Cauchy product, truncated at the smaller cap among truncated inputs."""
    prod = np.convolve(f.coeffs, g.coeffs)
    cap = _result_cap(f, g)
    if cap is not None:
        prod = prod[: cap + 1]
    return TaylorSeries(prod, min(f.valid_radius, g.valid_radius), cap is None, f.tol)


def dilate(f: TaylorSeries, r: float) -> TaylorSeries:
    """Coefficients of ``z -> f(r z)`` for ``0 <= r < 1``."""
    if not 0.0 <= r < 1.0:
        raise DomainError(f"dilation parameter must lie in [0, 1), got {r}")
    if r == 0.0:
        return TaylorSeries.constant(f.coeffs[0])
    scale = r ** np.arange(len(f))
    return TaylorSeries(f.coeffs * scale, min(1.0, f.valid_radius / r), f.exact, f.tol)


def compose_at_zero(f: TaylorSeries, phi: TaylorSeries, zero_tol: float = 1e-14) -> TaylorSeries:
    """Series of ``f o phi`` when ``phi(0) = 0``.

    Other base points need recentring, which is ill-conditioned for truncated
    series; use pointwise evaluation instead.
    """
    if abs(phi.coeffs[0]) > zero_tol:
        raise UnsupportedError(
            f"series composition needs phi(0) = 0 (got {phi.coeffs[0]:.3g}); evaluate pointwise instead"
        )
    inner = np.array(phi.coeffs, dtype=complex)
    inner[0] = 0.0
    cap = _result_cap(f, phi)
    if cap is None:
        cap = f.degree_cap * max(phi.degree_cap, 1)
    acc = np.array([f.coeffs[-1]], dtype=complex)
    for a_k in f.coeffs[-2::-1]:
        acc = np.convolve(acc, inner)[: cap + 1]
        acc[0] += a_k
    exact = f.exact and phi.exact
    radius = phi.valid_radius
    if not exact:
        radius = min(radius, estimate_valid_radius(acc, f.tol))
    return TaylorSeries(acc, radius, exact, f.tol)


__all__ = [
    "DEFAULT_DEGREE_CAP",
    "TaylorSeries",
    "estimate_valid_radius",
    "evaluate",
    "derivative",
    "antiderivative",
    "multiply",
    "dilate",
    "compose_at_zero",
]
