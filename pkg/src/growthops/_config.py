"""Default tolerances and grid settings shared across modules."""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    series: float = 1e-12
    fit_residual: float = 0.05
    eps_fit: float = 0.01
    decay: float = 1e-2
    cauchy: float = 1e-3
    norm_equality: float = 0.02
    dn: float = 0.05
    kernel_norm: float = 1e-3

    def as_dict(self) -> dict:
        return asdict(self)

    def updated(self, **overrides) -> "Tolerances":
        return replace(self, **overrides)


@dataclass(frozen=True)
class ProfileGrid:
    """Boundary-refining polar grid: rays at 2*pi*k/n_rays, radii 1 - 2**-j."""

    n_rays: int = 64
    max_j: int = 40
    fit_window: int = 12

    def __post_init__(self):
        if self.n_rays < 1 or self.max_j < 2 or self.fit_window < 3:
            raise ValueError(f"grid parameters must be positive: {self}")
        if self.fit_window > self.max_j:
            raise ValueError("fit_window cannot exceed max_j")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class NormGrid:
    """Quadrature and sampling resolution used by space norms."""

    hardy_angles: int = 2048
    hardy_max_angles: int = 2 ** 20
    hardy_max_j: int = 40
    bergman_radial: int = 128
    bergman_angles: int = 512
    sup_angles: int = 256
    sup_uniform: int = 256
    sup_per_octave: int = 4
    sup_max_octave: int = 40

    def refined(self) -> "NormGrid":
        return replace(
            self,
            sup_angles=2 * self.sup_angles,
            sup_uniform=2 * self.sup_uniform,
            sup_per_octave=2 * self.sup_per_octave,
        )

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()
DEFAULT_PROFILE_GRID = ProfileGrid()
DEFAULT_NORM_GRID = NormGrid()

__all__ = [
    "Tolerances",
    "ProfileGrid",
    "NormGrid",
    "DEFAULT_TOLERANCES",
    "DEFAULT_PROFILE_GRID",
    "DEFAULT_NORM_GRID",
]
