"""Radial weights ``v: D -> (0, 1]``."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidWeightError, SingularityError
from .expr import ExprAST, eval_ast, parse

TYPICAL_GRID_J = 24


def gap(r):
    """``1 - r**2``; factored as ``(1 - r)(1 + r)`` near 1 to keep relative accuracy."""
    r = np.asarray(r, dtype=float)
    return np.where(r <= 0.75, 1.0 - r * r, (1.0 - r) * (1.0 + r))


@dataclass(frozen=True)
class Weight:
    """A radial weight.

    ``kind`` is ``"power"`` for ``(1 - |z|^2)**beta``, ``"log"`` for
    ``(1 - |z|^2)(1 + log(1/(1 - |z|^2)))`` and ``"custom"`` for a profile in
    ``t = |z|`` normalised by its value at 0.
    """

    kind: str
    beta: float | None = None
    profile: ExprAST | None = field(default=None, compare=False)
    profile_text: str | None = None

    def __post_init__(self):
        if self.kind == "power":
            if self.beta is None or not self.beta > 0:
                raise InvalidWeightError(f"power weight needs beta > 0, got {self.beta}")
            object.__setattr__(self, "beta", float(self.beta))
        elif self.kind == "custom":
            if self.profile is None:
                if not self.profile_text:
                    raise InvalidWeightError("custom weight needs a profile expression in t")
                object.__setattr__(self, "profile", parse(self.profile_text, var="t"))
            if self.profile_text is None:
                object.__setattr__(self, "profile_text", str(self.profile))
            if self.profile.var != "t":
                raise InvalidWeightError("custom weight profiles are expressions in t")
            v0 = _real_profile(self.profile, np.zeros(1))[0]
            if not v0 > 0:
                raise InvalidWeightError(f"custom weight profile must be positive at 0, got {v0}")
        elif self.kind != "log":
            raise InvalidWeightError(f"unknown weight kind {self.kind!r}")

    @classmethod
    def power(cls, beta: float) -> "Weight":
        return cls("power", beta=beta)

    @classmethod
    def log(cls) -> "Weight":
        return cls("log")

    @classmethod
    def custom(cls, text: str) -> "Weight":
        return cls("custom", profile_text=text)

    @property
    def name(self) -> str:
        if self.kind == "power":
            return f"power:{_fmt(self.beta)}"
        if self.kind == "log":
            return "log"
        return f"custom:{self.profile_text}"

    def radial(self, r, one_minus_r2=None):
        """Weight as a function of the radius; pass ``1 - r**2`` when known exactly."""
        r = np.asarray(r, dtype=float)
        g = gap(r) if one_minus_r2 is None else np.asarray(one_minus_r2, dtype=float)
        if self.kind == "power":
            return g ** self.beta
        if self.kind == "log":
            with np.errstate(divide="ignore"):
                return np.where(g > 0, g * (1.0 - np.log(np.where(g > 0, g, 1.0))), 0.0)
        vals = _real_profile(self.profile, r) / _real_profile(self.profile, np.zeros(1))[0]
        bad = (vals <= 0) | (vals > 1 + 1e-12)
        if np.any(bad):
            idx = np.argmax(bad)
            raise InvalidWeightError(
                f"custom weight {self.profile_text!r} leaves (0, 1] at t={np.ravel(r)[idx]:.6g}: {np.ravel(vals)[idx]:.6g}"
            )
        return np.minimum(vals, 1.0)

    def __call__(self, z):
        return weight_value(self, z)


def _real_profile(profile: ExprAST, t) -> np.ndarray:
    try:
        vals = eval_ast(profile, np.asarray(t, dtype=float))
    except SingularityError as exc:
        raise InvalidWeightError(f"weight profile {profile} is singular: {exc}") from exc
    vals = np.asarray(vals)
    if np.any(np.abs(vals.imag) > 1e-12 * np.maximum(1.0, np.abs(vals.real))):
        raise InvalidWeightError(f"weight profile {profile} is not real-valued")
    return vals.real


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def weight_value(v: Weight, z):
    """``v(z) = v(|z|)``; scalar in, float out."""
    r = np.abs(np.asarray(z, dtype=complex))
    if np.any(r >= 1):
        raise InvalidWeightError("weights are defined on the open unit disk only")
    out = v.radial(r)
    return float(out) if np.ndim(out) == 0 else out


def parse_weight(name: str) -> Weight:
    """``power:beta``, ``log`` or ``custom:<expression in t>``."""
    kind, _, rest = name.strip().partition(":")
    if kind == "power":
        try:
            return Weight.power(float(rest))
        except ValueError as exc:
            raise InvalidWeightError(f"bad power weight {name!r}") from exc
    if kind == "log" and not rest:
        return Weight.log()
    if kind == "custom" and rest:
        return Weight.custom(rest)
    raise InvalidWeightError(f"cannot parse weight {name!r}; use power:<beta>, log or custom:<expr in t>")


@dataclass(frozen=True)
class TypicalityVerdict:
    typical: bool
    reason: str | None
    radii: tuple
    values: tuple
    decay_exponent: float

    def __bool__(self):
        return self.typical


def is_typical(v: Weight, decay_tol: float = 1e-2, eps_fit: float = 0.01) -> TypicalityVerdict:
    """Numerical evidence that ``v`` is non-increasing in ``|z|`` and tends to 0.

    Radiality holds by construction.  Monotonicity is checked on
    ``r_j = 1 - 2**-j``, ``j = 0..24``; decay holds when the last value is
    below ``decay_tol`` or the log-log slope over the last eight radii is
    positive (so the power-law extrapolation tends to 0).
    """
    j = np.arange(0, TYPICAL_GRID_J + 1)
    h = 2.0 ** -j
    r = 1.0 - h
    try:
        vals = v.radial(r, h * (2.0 - h))
    except InvalidWeightError as exc:
        return TypicalityVerdict(False, f"invalid weight: {exc}", tuple(r), (), float("nan"))
    tail = slice(-8, None)
    with np.errstate(divide="ignore"):
        slope = float(np.polyfit(np.log(h[tail]), np.log(np.maximum(vals[tail], 1e-300)), 1)[0])
    evidence = dict(radii=tuple(float(x) for x in r), values=tuple(float(x) for x in vals), decay_exponent=slope)
    increases = np.nonzero(np.diff(vals) > 1e-12 * np.maximum(vals[:-1], 1e-300))[0]
    if increases.size:
        k = increases[0]
        return TypicalityVerdict(False, f"increases between r={r[k]:.6g} and r={r[k + 1]:.6g}", **evidence)
    if not (vals[-1] < decay_tol or slope > eps_fit):
        return TypicalityVerdict(False, f"no decay to 0 (v={vals[-1]:.6g} at r={r[-1]:.6g}, slope {slope:.3g})", **evidence)
    return TypicalityVerdict(True, None, **evidence)


__all__ = ["Weight", "weight_value", "parse_weight", "is_typical", "TypicalityVerdict", "gap"]
