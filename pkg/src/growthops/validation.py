"""Input checks shared by the estimator and the CLI."""
from __future__ import annotations

import numpy as np

from ._config import DEFAULT_TOLERANCES, ProfileGrid, Tolerances
from .exceptions import DomainError
from .operators import OperatorSymbol, operator_from_spec
from .spaces import SpaceDescriptor, parse_space


def check_space(space) -> SpaceDescriptor:
    if isinstance(space, SpaceDescriptor):
        return space
    if isinstance(space, str):
        return parse_space(space)
    raise TypeError(f"expected a space name or SpaceDescriptor, got {type(space).__name__}")


def check_operator(op) -> OperatorSymbol:
    return operator_from_spec(op)


def check_disk_points(points) -> np.ndarray:
    """1-d complex array of points in the open unit disk."""
    z = np.asarray(points, dtype=complex)
    if z.ndim == 0:
        z = z.reshape(1)
    if z.ndim == 2 and z.shape[1] == 2 and not np.iscomplexobj(points):
        z = z[:, 0] + 1j * z[:, 1]  # (x, y) rows
    z = z.ravel()
    if z.size == 0:
        raise DomainError("no points given")
    if not np.all(np.isfinite(z)):
        raise DomainError("points must be finite")
    if np.any(np.abs(z) >= 1):
        raise DomainError("points must lie in the open unit disk")
    return z


def check_positive_list(values, name: str) -> tuple:
    vals = tuple(float(v) for v in values)
    if any(not v > 0 for v in vals):
        raise DomainError(f"{name} must be positive, got {vals}")
    return vals


def check_trial_radii(values) -> tuple:
    vals = tuple(float(v) for v in values)
    if any(not 0 <= v < 1 for v in vals):
        raise DomainError(f"trial radii must lie in [0, 1), got {vals}")
    return vals


def check_grid(n_rays: int, max_j: int, fit_window: int) -> ProfileGrid:
    try:
        return ProfileGrid(int(n_rays), int(max_j), int(fit_window))
    except ValueError as exc:
        raise DomainError(str(exc)) from exc


def check_tolerances(overrides) -> Tolerances:
    if overrides is None:
        return DEFAULT_TOLERANCES
    if isinstance(overrides, Tolerances):
        return overrides
    unknown = set(overrides) - set(DEFAULT_TOLERANCES.as_dict())
    if unknown:
        raise DomainError(f"unknown tolerances {sorted(unknown)}")
    tol = DEFAULT_TOLERANCES.updated(**{k: float(v) for k, v in overrides.items()})
    if any(not v > 0 for v in tol.as_dict().values()):
        raise DomainError("tolerances must be positive")
    return tol


__all__ = [
    "check_space",
    "check_operator",
    "check_disk_points",
    "check_positive_list",
    "check_trial_radii",
    "check_grid",
    "check_tolerances",
]
