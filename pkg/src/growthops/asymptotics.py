"""Boundary asymptotics of nonnegative samples along rays ``r_j = 1 - 2**-j``.

Each ray is summarised by the exponent ``e`` in ``value ~ C (1 - r)**e``,
fitted by least squares in log-log coordinates over the last few radii.  The
sign of ``e`` separates the three regimes: decay to 0 (``e > eps``), a finite
nonzero limit (``|e| <= eps``) and divergence (``e < -eps``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._config import DEFAULT_TOLERANCES, Tolerances

VANISHING = 1e-300


@dataclass(frozen=True)
class RayFit:
    exponent: float
    residual: float
    reliable: bool
    trend: str  # "decays" | "finite" | "diverges" | "vanishing" | "unreliable"
    limit: float  # boundary limit estimate; inf when diverging, nan when unreliable
    last_value: float

    def as_dict(self) -> dict:
        return {
            "exponent": _json_float(self.exponent),
            "residual": _json_float(self.residual),
            "reliable": self.reliable,
            "trend": self.trend,
            "limit": _json_float(self.limit),
        }


def _json_float(x: float):
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


def richardson_limit(values) -> float:
    """Limit as h -> 0 of samples taken at h, h/2, h/4 (last three entries).

    Removes the O(h) and O(h**2) terms; falls back to first order with two
    samples.
    """
    v = np.asarray(values, dtype=float)
    if len(v) >= 3:
        f1, f2, f3 = v[-3:]
        return float((8 * f3 - 6 * f2 + f1) / 3)
    if len(v) == 2:
        return float(2 * v[-1] - v[-2])
    return float(v[-1])


def fit_ray(h, values, window: int = 12, tol: Tolerances = DEFAULT_TOLERANCES) -> RayFit:
    """Fit ``log value = e log h + c`` over the last ``window`` samples.

    ``h = 1 - r`` must be decreasing along the ray.
    """
    h = np.asarray(h, dtype=float)[-window:]
    v = np.asarray(values, dtype=float)[-window:]
    last = float(v[-1])
    if np.all(v <= VANISHING):
        return RayFit(math.inf, 0.0, True, "vanishing", 0.0, last)
    if np.any(v <= VANISHING) or not np.all(np.isfinite(v)):
        return RayFit(math.nan, math.inf, False, "unreliable", math.nan, last)
    x = np.log(h)
    y = np.log(v)
    (e, c) = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (e * x + c)) ** 2)))
    e = float(e)
    if resid > tol.fit_residual:
        return RayFit(e, resid, False, "unreliable", math.nan, last)
    if e > tol.eps_fit:
        return RayFit(e, resid, True, "decays", 0.0, last)
    if e < -tol.eps_fit:
        return RayFit(e, resid, True, "diverges", math.inf, last)
    return RayFit(e, resid, True, "finite", max(richardson_limit(v), 0.0), last)


def fit_rays(h, values, window: int = 12, tol: Tolerances = DEFAULT_TOLERANCES) -> list[RayFit]:
    """One fit per row of ``values`` (rays x radii)."""
    return [fit_ray(h, row, window, tol) for row in np.atleast_2d(values)]


@dataclass(frozen=True)
class SupVerdict:
    status: str  # "yes" | "no" | "inconclusive"
    sup: float
    divergence_exponent: float | None
    note: str = ""


@dataclass(frozen=True)
class LimitVerdict:
    status: str  # "yes" (limit 0) | "no" | "inconclusive"
    limit: float
    note: str = ""


def partial_sups(values) -> np.ndarray:
    """Running maximum over radii of the per-radius maximum over rays."""
    per_radius = np.max(np.atleast_2d(values), axis=0)
    return np.maximum.accumulate(per_radius)


def sup_verdict(fits: list[RayFit], values, tol: Tolerances = DEFAULT_TOLERANCES, cauchy_span: int = 5) -> SupVerdict:
    """Is the sampled quantity bounded on the disk?

    Bounded when every ray is reliable with exponent >= -eps and the running
    sup over the last ``cauchy_span`` refinements has stabilised.
    """
    vals = np.atleast_2d(values)
    sup = float(np.max(vals))
    reliable = [f for f in fits if f.reliable]
    diverging = [f for f in reliable if f.trend == "diverges"]
    if diverging:
        worst = min(f.exponent for f in diverging)
        return SupVerdict("no", math.inf, worst, f"{len(diverging)} of {len(fits)} rays diverge")
    if 2 * len(reliable) <= len(fits):
        return SupVerdict("inconclusive", sup, None, "fewer than half the rays have reliable fits")
    if len(reliable) < len(fits):
        return SupVerdict("inconclusive", sup, None, f"{len(fits) - len(reliable)} rays have unreliable fits")
    running = partial_sups(vals)
    head = running[-1 - cauchy_span]
    tail = running[-1]
    if tail > 0 and (tail - head) / tail > tol.cauchy:
        return SupVerdict("inconclusive", sup, None, "running sup still increasing")
    return SupVerdict("yes", sup, None)


def limit_verdict(fits: list[RayFit], tol: Tolerances = DEFAULT_TOLERANCES) -> LimitVerdict:
    """Does the sampled quantity tend to 0 at the boundary along every ray?"""
    reliable = [f for f in fits if f.reliable]
    diverging = [f for f in reliable if f.trend == "diverges"]
    if diverging:
        return LimitVerdict("no", math.inf, f"{len(diverging)} rays diverge")
    stable = [f for f in reliable if f.trend == "finite"]
    if stable:
        limit = max(f.limit for f in stable)
        if limit > tol.decay:
            return LimitVerdict("no", limit, f"{len(stable)} rays stabilise at a positive level")
        return LimitVerdict("inconclusive", limit, "flat rays with limit below the decay tolerance")
    if len(reliable) < len(fits):
        return LimitVerdict("inconclusive", math.nan, f"{len(fits) - len(reliable)} rays have unreliable fits")
    return LimitVerdict("yes", 0.0)


__all__ = [
    "RayFit",
    "fit_ray",
    "fit_rays",
    "richardson_limit",
    "SupVerdict",
    "LimitVerdict",
    "sup_verdict",
    "limit_verdict",
    "partial_sups",
]
