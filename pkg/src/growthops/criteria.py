"""Criterion profiles ``z -> v(z) ||T* K_z||`` and the verdicts read off them.

The operator norm of ``T: X -> H_v`` (or ``B_v``) equals the sup of the
profile; compactness is decided by its boundary limit.  For the operators
handled here the profile factorises into a weight part and a kernel part
``|symbol| * ||delta||_X``, so it can be evaluated in closed form right up to
the circle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._config import DEFAULT_NORM_GRID, DEFAULT_PROFILE_GRID, DEFAULT_TOLERANCES, NormGrid, ProfileGrid, Tolerances
from .asymptotics import RayFit, _json_float, fit_rays, limit_verdict, sup_verdict
from .exceptions import DomainError, QuadratureError, UnsupportedError
from .expr import ExprAST, Var, eval_ast, parse
from .operators import OperatorSymbol, apply, operator_from_spec
from .spaces import (
    SpaceDescriptor,
    as_handle,
    little_space_membership,
    point_eval_radial,
    ray_samples,
    space_norm,
)
from .weights import Weight, gap, parse_weight

SUPPORTED_PAIRINGS = (
    ("wcomp", "growth"),
    ("volterra", "bloch"),
    ("cesaro", "bloch"),
    ("volterra", "growth"),
    ("cesaro", "growth"),
    ("mult", "growth"),
)


def _pairing_error(T: OperatorSymbol, Y: SpaceDescriptor) -> UnsupportedError:
    listed = ", ".join(f"{k} -> {t}" for k, t in SUPPORTED_PAIRINGS)
    return UnsupportedError(f"no factorised profile for {T.kind} into {Y.kind}; supported: {listed}")


# ----------------------------------------------------------------- profiles


@dataclass(frozen=True, eq=False)
class CriterionProfile:
    """Samples of the criterion profile on rays ``theta_k`` and radii ``1 - 2**-j``.

    Arrays have shape ``(n_rays, n_radii)``.  ``kernel_part`` is the
    unweighted factor ``||T* K_z||`` used by the D_N diagnostic.
    """

    operator: OperatorSymbol
    source: SpaceDescriptor
    target: SpaceDescriptor
    theta: np.ndarray
    j: np.ndarray
    h: np.ndarray
    z: np.ndarray
    weight_part: np.ndarray
    kernel_part: np.ndarray
    values: np.ndarray
    fits: tuple
    equivalence_flag: bool
    grid: ProfileGrid
    tol: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False)

    @property
    def r(self) -> np.ndarray:
        return 1.0 - self.h

    @property
    def samples(self) -> list:
        return list(zip(self.z.ravel().tolist(), self.values.ravel().tolist()))

    @property
    def exponents(self) -> np.ndarray:
        return np.array([f.exponent for f in self.fits])

    @property
    def sup_estimate(self) -> float:
        """``inf`` when a reliable ray diverges; otherwise at least every sample."""
        if any(f.reliable and f.trend == "diverges" for f in self.fits):
            return math.inf
        limits = [f.limit for f in self.fits if f.reliable and f.trend == "finite"]
        return float(max([float(np.max(self.values))] + limits))

    @property
    def boundary_limit(self) -> tuple[str, float]:
        """``(status, value)`` with status ``zero``, ``finite``, ``infinite`` or ``oscillatory``."""
        if any(f.reliable and f.trend == "diverges" for f in self.fits):
            return "infinite", math.inf
        if any(not f.reliable for f in self.fits):
            return "oscillatory", math.nan
        limits = [f.limit for f in self.fits if f.trend == "finite"]
        if limits and max(limits) > self.tol.decay:
            return "finite", float(max(limits))
        return "zero", float(max(limits, default=0.0))

    def real_ray(self) -> np.ndarray:
        return self.values[0]

    def summary(self) -> dict:
        status, limit = self.boundary_limit
        exps = [f.exponent for f in self.fits if f.reliable and math.isfinite(f.exponent)]
        return {
            "sup_estimate": _json_float(self.sup_estimate),
            "boundary_limit": {"status": status, "value": _json_float(limit)},
            "min_exponent": _json_float(min(exps)) if exps else None,
            "max_exponent": _json_float(max(exps)) if exps else None,
            "unreliable_rays": sum(not f.reliable for f in self.fits),
            "ray_exponents": [_json_float(f.exponent) for f in self.fits],
            "equivalence_flag": self.equivalence_flag,
            "grid": {"n_rays": self.grid.n_rays, "max_j": self.grid.max_j, "fit_window": self.grid.fit_window},
        }


def _target_weight_part(T: OperatorSymbol, Y: SpaceDescriptor, r, g):
    if (T.kind, Y.kind) not in SUPPORTED_PAIRINGS:
        raise _pairing_error(T, Y)
    if T.kind in ("volterra", "cesaro") and Y.kind == "growth":
        beta = Y.power_beta
        if beta is None:
            raise UnsupportedError(f"{T.kind} into growth spaces needs a power weight, got {Y.weight.name}")
        return g ** (beta + 1.0)
    return Y.weight.radial(r, g)


def _kernel_part(T: OperatorSymbol, X: SpaceDescriptor, z, r, g):
    if T.kind == "wcomp":
        u = np.abs(eval_ast(T.u, z))
        if isinstance(T.phi.root, Var):
            # identity symbol: reuse the exact grid gap so v(z)/v(z) cancels exactly
            return u * point_eval_radial(X, r, g)
        w = np.abs(eval_ast(T.phi, z))
        if np.any(w >= 1):
            raise DomainError(f"phi = {T.phi} reaches the unit circle on the sampling grid")
        return u * point_eval_radial(X, w)
    symbol = T.h if T.kind == "mult" else T.g_prime
    return np.abs(eval_ast(symbol, z)) * point_eval_radial(X, r, g)


def _equivalence_flag(T: OperatorSymbol, X: SpaceDescriptor, Y: SpaceDescriptor) -> bool:
    if X.point_eval_kind != "exact":
        return True
    # C_g and T_g into H_beta are only equivalent to the B_{beta+1} criteria
    return T.kind == "cesaro" or (T.kind == "volterra" and Y.kind == "growth")


def criterion_profile(
    T,
    X: SpaceDescriptor,
    Y: SpaceDescriptor,
    grid: ProfileGrid = DEFAULT_PROFILE_GRID,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> CriterionProfile:
    """Sample ``v(z) ||T* K_z||`` through its factorised closed form."""
    T = operator_from_spec(T)
    if Y.kind not in ("growth", "bloch"):
        raise UnsupportedError(f"target must be a growth or Bloch-type space, got {Y.name}")
    X.point_eval_kind  # raises when X has no point-evaluation formula
    parts = {}

    def fn(z, r, g):
        parts["w"] = _target_weight_part(T, Y, r, g)
        parts["k"] = _kernel_part(T, X, z, r, g)
        return parts["w"] * parts["k"]

    theta, j, h, z, vals = ray_samples(fn, grid.n_rays, grid.max_j, j_min=0)
    fits = fit_rays(h, vals, grid.fit_window, tol)
    return CriterionProfile(
        operator=T,
        source=X,
        target=Y,
        theta=theta,
        j=j,
        h=h,
        z=z,
        weight_part=np.asarray(parts["w"], dtype=float) * np.ones_like(vals),
        kernel_part=np.asarray(parts["k"], dtype=float),
        values=vals,
        fits=tuple(fits),
        equivalence_flag=_equivalence_flag(T, X, Y),
        grid=grid,
        tol=tol,
    )


# ----------------------------------------------------------------- verdicts


@dataclass(frozen=True)
class BoundednessVerdict:
    status: str  # "yes" | "no" | "inconclusive"
    norm_estimate: float | None = None
    equivalence_flag: bool = False
    divergence_exponent: float | None = None
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "norm_estimate": None if self.norm_estimate is None else _json_float(self.norm_estimate),
            "equivalence_flag": self.equivalence_flag,
            "divergence_exponent": None if self.divergence_exponent is None else _json_float(self.divergence_exponent),
            "note": self.note,
        }


@dataclass(frozen=True)
class CompactnessVerdict:
    status: str  # "yes" | "no" | "inconclusive"
    limit_estimate: float | None = None
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "limit_estimate": None if self.limit_estimate is None else _json_float(self.limit_estimate),
            "note": self.note,
        }


def boundedness_verdict(P: CriterionProfile) -> BoundednessVerdict:
    v = sup_verdict(list(P.fits), P.values, P.tol)
    if v.status == "yes":
        return BoundednessVerdict("yes", P.sup_estimate, P.equivalence_flag, None, v.note)
    if v.status == "no":
        return BoundednessVerdict("no", None, P.equivalence_flag, v.divergence_exponent, v.note)
    return BoundednessVerdict("inconclusive", None, P.equivalence_flag, None, v.note)


def compactness_verdict(P: CriterionProfile) -> CompactnessVerdict:
    v = limit_verdict(list(P.fits), P.tol)
    if v.status == "yes":
        if boundedness_verdict(P).status != "yes":
            return CompactnessVerdict("inconclusive", 0.0, "profile decays but boundedness is not established")
        return CompactnessVerdict("yes", 0.0, v.note)
    if v.status == "no":
        return CompactnessVerdict("no", v.limit, v.note)
    return CompactnessVerdict("inconclusive", None if math.isnan(v.limit) else v.limit, v.note)


# ----------------------------------------------------------------- D_N diagnostic


@dataclass(frozen=True)
class DNVerdict:
    status: str  # "holds" | "fails" | "inconclusive"
    N_list: tuple
    sups: tuple  # None for an empty D_N
    counts: tuple
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "N": [float(n) for n in self.N_list],
            "sups": [None if s is None else _json_float(s) for s in self.sups],
            "counts": list(self.counts),
            "note": self.note,
        }


def dn_diagnostic(
    T,
    X: SpaceDescriptor,
    Y: SpaceDescriptor,
    N_list=(10, 100, 1000),
    profile: CriterionProfile | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> DNVerdict:
    """Weighted sups of the profile over ``D_N = {||T* K_z|| > N}``.

    The condition is sufficient for compactness only.  It holds when the
    sups decrease strictly and either the last one is below ``tol.dn`` or a
    power law in ``N`` fitted to them decays.
    """
    P = profile if profile is not None else criterion_profile(T, X, Y, tol=tol)
    Ns = tuple(sorted(float(n) for n in N_list))
    if not Ns:
        raise DomainError("N_list is empty")
    sups, counts = [], []
    for n in Ns:
        mask = P.kernel_part > n
        counts.append(int(mask.sum()))
        sups.append(float(P.values[mask].max()) if mask.any() else None)
    if all(s is None for s in sups):
        return DNVerdict("holds", Ns, tuple(sups), tuple(counts), "D_N empty on the grid for every N (vacuous)")
    seq = [0.0 if s is None else s for s in sups]
    decreasing = all(b < a for a, b in zip(seq, seq[1:]))
    if decreasing and seq[-1] < tol.dn:
        return DNVerdict("holds", Ns, tuple(sups), tuple(counts), "sups fall below tolerance")
    if decreasing and seq[-1] > 0 and len(seq) >= 2:
        slope = float(np.polyfit(np.log(Ns), np.log(seq), 1)[0])
        if slope < -tol.eps_fit:
            return DNVerdict(
                "holds",
                Ns,
                tuple(sups),
                tuple(counts),
                f"sups decrease like N^{slope:.3g}; last sup {seq[-1]:.3g} is above {tol.dn}",
            )
    stable = max(seq) - min(seq) <= tol.cauchy * max(max(seq), 1e-300)
    if stable or seq[-1] >= seq[0]:
        return DNVerdict("fails", Ns, tuple(sups), tuple(counts), "sups do not decrease")
    return DNVerdict("inconclusive", Ns, tuple(sups), tuple(counts), "sups decrease but not monotonically")


# ----------------------------------------------------------------- kernel lower bound


@dataclass(frozen=True)
class KernelBound:
    value: float
    radii: tuple
    bounds: tuple
    test_norms: tuple

    def as_dict(self) -> dict:
        return {
            "value": _json_float(self.value),
            "radii": list(self.radii),
            "bounds": [_json_float(b) for b in self.bounds],
            "test_norms": [_json_float(n) for n in self.test_norms],
        }


def normalized_kernel(X: SpaceDescriptor, w: float) -> ExprAST:
    """Unit-norm test function attaining ``||delta_w||`` on ``H^p`` or ``A^p_alpha`` (real ``w``)."""
    if X.kind == "hardy":
        s = 1.0
    elif X.kind == "bergman":
        s = 2.0 + X.alpha
    else:
        raise UnsupportedError(f"normalised kernels exist only for Hardy and Bergman spaces, not {X.name}")
    w = float(w)
    if not -1 < w < 1:
        raise DomainError(f"trial radius {w} outside (-1, 1)")
    c = float(gap(w)) ** (s / X.p)
    base = ExprAST.constant(1.0) - ExprAST.constant(w) * ExprAST.variable()
    return ExprAST.constant(c) * base ** (-2.0 * s / X.p)


def kernel_lower_bound(
    T,
    X: SpaceDescriptor,
    Y: SpaceDescriptor,
    trial_radii=(0.9, 0.99, 0.999),
    grid: NormGrid = DEFAULT_NORM_GRID,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> KernelBound:
    """``max_w ||T k_w||_Y`` over normalised kernels ``k_w``; a lower bound for ``||T||``."""
    T = operator_from_spec(T)
    bounds, norms = [], []
    for w in trial_radii:
        k = as_handle(normalized_kernel(X, w))
        nk = space_norm(X, k, grid).value
        if abs(nk - 1.0) > tol.kernel_norm:
            raise QuadratureError(
                f"test function k_{w} has {X.name} norm {nk:.8g}; deviation from 1 exceeds {tol.kernel_norm}"
            )
        image = apply(T, k)
        bounds.append(space_norm(Y, image, grid, extra_points=[w]).value / nk)
        norms.append(nk)
    return KernelBound(float(max(bounds)), tuple(float(w) for w in trial_radii), tuple(bounds), tuple(norms))


# ----------------------------------------------------------------- symbol classification


@dataclass(frozen=True)
class SymbolFamily:
    """``bloch`` (exponent gamma), ``logbloch`` (exponent, 1 is LogB), ``lipschitz``,
    ``little_growth`` (weight) or ``little_bloch`` (weight)."""

    kind: str
    exponent: float | None = None
    weight: Weight | None = None

    def __post_init__(self):
        if self.kind not in ("bloch", "logbloch", "lipschitz", "little_growth", "little_bloch"):
            raise DomainError(f"unknown symbol family {self.kind!r}")
        if self.kind == "lipschitz":
            object.__setattr__(self, "exponent", 0.0)
        if self.kind == "logbloch" and self.exponent is None:
            object.__setattr__(self, "exponent", 1.0)
        if self.kind == "bloch" and (self.exponent is None or self.exponent < 0):
            raise DomainError("Bloch-type family needs an exponent >= 0")
        if self.kind.startswith("little") and self.weight is None:
            if self.exponent is None:
                raise DomainError(f"{self.kind} needs a weight")
            object.__setattr__(self, "weight", Weight.power(self.exponent))

    @classmethod
    def bloch(cls, gamma: float) -> "SymbolFamily":
        return cls("bloch", float(gamma))

    @classmethod
    def log_bloch(cls, exponent: float = 1.0) -> "SymbolFamily":
        return cls("logbloch", float(exponent))

    @classmethod
    def lipschitz(cls) -> "SymbolFamily":
        return cls("lipschitz")

    @classmethod
    def little_growth(cls, weight) -> "SymbolFamily":
        return cls("little_growth", weight=weight if isinstance(weight, Weight) else Weight.power(weight))

    @classmethod
    def little_bloch(cls, weight) -> "SymbolFamily":
        return cls("little_bloch", weight=weight if isinstance(weight, Weight) else Weight.power(weight))

    @property
    def name(self) -> str:
        if self.kind == "bloch":
            return "B" if self.exponent == 1 else f"B_{_fmt(self.exponent)}"
        if self.kind == "logbloch":
            return "LogB" if self.exponent == 1 else f"LogB_{_fmt(self.exponent)}"
        if self.kind == "lipschitz":
            return "Lipschitz"
        prefix = "H" if self.kind == "little_growth" else "B"
        return f"{prefix}_0[{self.weight.name}]"


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def parse_family(text: str) -> SymbolFamily:
    """``bloch:<gamma>``, ``logbloch[:<exp>]``, ``lipschitz``, ``little_growth:<weight>``, ``little_bloch:<weight>``."""
    kind, _, rest = text.strip().partition(":")
    try:
        if kind == "bloch":
            return SymbolFamily.bloch(float(rest))
        if kind == "logbloch":
            return SymbolFamily.log_bloch(float(rest) if rest else 1.0)
        if kind == "lipschitz" and not rest:
            return SymbolFamily.lipschitz()
        if kind in ("little_growth", "little_bloch") and rest:
            weight = parse_weight(rest) if ":" in rest or rest == "log" else Weight.power(float(rest))
            return SymbolFamily(kind, weight=weight)
    except ValueError as exc:
        raise DomainError(f"cannot parse symbol family {text!r}: {exc}") from exc
    raise DomainError(f"unknown symbol family {text!r}")


@dataclass(frozen=True)
class SymbolScan:
    """Sup and boundary limit of ``(1-|z|^2)**a (log 1/(1-|z|^2))**k |g'(z)|`` on the profile grid."""

    sup: object  # SupVerdict
    limit: object  # LimitVerdict
    fits: tuple
    sup_estimate: float


def symbol_scan(
    g: ExprAST,
    exponent: float,
    log_flag: bool = False,
    grid: ProfileGrid = DEFAULT_PROFILE_GRID,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SymbolScan:
    gp = g.derivative

    def fn(z, r, gg):
        factor = gg ** exponent
        if log_flag:
            factor = factor * np.log(1.0 / gg)
        return factor * np.abs(eval_ast(gp, z))

    _, _, h, _, vals = ray_samples(fn, grid.n_rays, grid.max_j, j_min=0)
    fits = fit_rays(h, vals, grid.fit_window, tol)
    sv = sup_verdict(fits, vals, tol)
    lv = limit_verdict(fits, tol)
    limits = [f.limit for f in fits if f.reliable and f.trend == "finite"]
    est = math.inf if sv.status == "no" else float(max([float(np.max(vals))] + limits))
    return SymbolScan(sv, lv, tuple(fits), est)


@dataclass(frozen=True)
class Classification:
    family: str
    status: str  # "member" | "not_member" | "inconclusive"
    seminorm: float | None
    interpretation: str = ""
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "status": self.status,
            "seminorm": None if self.seminorm is None else _json_float(self.seminorm),
            "interpretation": self.interpretation,
            "note": self.note,
        }


_STATUS = {"yes": "member", "no": "not_member", "inconclusive": "inconclusive"}


def classify_symbol(
    g,
    family,
    grid: ProfileGrid = DEFAULT_PROFILE_GRID,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Classification:
    """Membership of ``g`` in a symbol family, judged on the boundary grid."""
    g = parse(g) if isinstance(g, str) else g
    fam = parse_family(family) if isinstance(family, str) else family
    if fam.kind in ("little_growth", "little_bloch"):
        space = SpaceDescriptor("growth" if fam.kind == "little_growth" else "bloch", weight=fam.weight, little=True)
        m = little_space_membership(g, space, n_rays=grid.n_rays, max_j=grid.max_j, window=grid.fit_window, tol=tol)
        return Classification(fam.name, m.status, None, "boundary limit of the defining quantity is 0", m.note)
    scan = symbol_scan(g, fam.exponent, fam.kind == "logbloch", grid, tol)
    status = _STATUS[scan.sup.status]
    interp = "sup over the disk of |g'| is finite" if fam.kind == "lipschitz" else ""
    return Classification(fam.name, status, scan.sup_estimate if status == "member" else None, interp, scan.sup.note)


# ----------------------------------------------------------------- closed-form tables


@dataclass(frozen=True)
class ClosedForm:
    """Table entry: the profile behaves like ``(1-|z|^2)**a (log)**k |g'(z)|``."""

    exponent: float
    log_flag: bool
    regime: str  # "bloch_type" | "lipschitz" | "log_bloch" | "constant_only"
    symbol_space: str

    def as_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "log_flag": self.log_flag,
            "regime": self.regime,
            "symbol_space": self.symbol_space,
        }


def closed_form_verdict(op_kind: str, X: SpaceDescriptor, Y: SpaceDescriptor, atol: float = 1e-12) -> ClosedForm:
    """Exponent arithmetic of the Volterra/Cesaro tables.

    ``a = w - d`` where ``w`` is ``beta + 1`` for ``H_beta`` targets and
    ``beta`` for ``B_beta`` targets, and ``||delta_z||_X ~ (1-|z|^2)**-d``.
    """
    if op_kind not in ("volterra", "cesaro"):
        raise UnsupportedError(f"closed-form tables cover volterra and cesaro only, not {op_kind}")
    if X.kind not in ("hardy", "bergman", "growth", "bloch"):
        raise UnsupportedError(f"no table for source {X.name}")
    if X.kind in ("growth", "bloch") and X.power_beta is None:
        raise UnsupportedError(f"no table for non-power source weight {X.name}")
    beta = Y.power_beta
    if Y.kind not in ("growth", "bloch") or beta is None:
        raise UnsupportedError(f"no table for target {Y.name}")
    w = beta + 1.0 if Y.kind == "growth" else beta
    d, log_flag = X.point_eval_growth
    a = w - d
    if abs(a) <= atol:
        a = 0.0
    if log_flag:
        if a <= 0:
            return ClosedForm(a, True, "constant_only", "constants")
        return ClosedForm(a, True, "log_bloch", SymbolFamily.log_bloch(a).name)
    if a > 0:
        return ClosedForm(a, False, "bloch_type", SymbolFamily.bloch(a).name)
    if a == 0:
        return ClosedForm(a, False, "lipschitz", "Lipschitz")
    return ClosedForm(a, False, "constant_only", "constants")


@dataclass(frozen=True)
class CrossCheck:
    status: str  # "agrees" | "disagrees" | "inconclusive" | "not_applicable"
    detail: str = ""
    closed_form: ClosedForm | None = None
    expected_bounded: str | None = None
    expected_compact: str | None = None

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "detail": self.detail,
            "closed_form": None if self.closed_form is None else self.closed_form.as_dict(),
            "expected_bounded": self.expected_bounded,
            "expected_compact": self.expected_compact,
        }


def closed_form_cross_check(
    T: OperatorSymbol,
    X: SpaceDescriptor,
    Y: SpaceDescriptor,
    bounded: BoundednessVerdict,
    compact: CompactnessVerdict,
    grid: ProfileGrid = DEFAULT_PROFILE_GRID,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> CrossCheck:
    """Compare numerical verdicts with the table's symbol condition on ``g``."""
    try:
        cf = closed_form_verdict(T.kind, X, Y)
    except UnsupportedError as exc:
        return CrossCheck("not_applicable", str(exc))
    scan = symbol_scan(T.g, cf.exponent, cf.log_flag, grid, tol)
    exp_b, exp_c = scan.sup.status, scan.limit.status
    if exp_c == "yes" and exp_b != "yes":
        exp_c = "inconclusive"
    pairs = [("bounded", exp_b, bounded.status), ("compact", exp_c, compact.status)]
    if any("inconclusive" in (e, n) for _, e, n in pairs):
        status, detail = "inconclusive", "a verdict is inconclusive"
    else:
        bad = [f"{name}: table {e}, numerical {n}" for name, e, n in pairs if e != n]
        status, detail = ("disagrees", "; ".join(bad)) if bad else ("agrees", "")
    return CrossCheck(status, detail, cf, exp_b, exp_c)


# ----------------------------------------------------------------- full analysis


@dataclass(frozen=True)
class AnalysisVerdict:
    bounded: BoundednessVerdict
    compact: CompactnessVerdict
    dn_condition: DNVerdict | None = None
    closed_form_cross_check: CrossCheck | None = None
    necessary_condition: Classification | None = None

    def __post_init__(self):
        if self.compact.status == "yes" and self.bounded.status != "yes":
            raise AssertionError("compact verdict without a bounded verdict")

    def as_dict(self) -> dict:
        return {
            "bounded": self.bounded.as_dict(),
            "compact": self.compact.as_dict(),
            "dn_condition": None if self.dn_condition is None else self.dn_condition.as_dict(),
            "closed_form_cross_check": None
            if self.closed_form_cross_check is None
            else self.closed_form_cross_check.as_dict(),
            "necessary_condition": None if self.necessary_condition is None else self.necessary_condition.as_dict(),
        }


def little_space_precondition(T: OperatorSymbol, Y: SpaceDescriptor, grid=DEFAULT_PROFILE_GRID, tol=DEFAULT_TOLERANCES):
    """Membership that constants force when the target is a little space."""
    if not Y.little:
        return None
    if T.kind == "wcomp":
        return classify_symbol(T.u, SymbolFamily.little_growth(Y.weight), grid, tol)
    if T.kind == "mult":
        return classify_symbol(T.h, SymbolFamily.little_growth(Y.weight), grid, tol)
    if Y.kind == "bloch":
        return classify_symbol(T.g, SymbolFamily.little_bloch(Y.weight), grid, tol)
    return classify_symbol(T.g, SymbolFamily.little_growth(Y.weight), grid, tol)


def analyze(
    T,
    X: SpaceDescriptor,
    Y: SpaceDescriptor,
    N_list=(10, 100, 1000),
    grid: ProfileGrid = DEFAULT_PROFILE_GRID,
    tol: Tolerances = DEFAULT_TOLERANCES,
    profile: CriterionProfile | None = None,
) -> tuple[CriterionProfile, AnalysisVerdict]:
    T = operator_from_spec(T)
    P = profile if profile is not None else criterion_profile(T, X, Y, grid, tol)
    b = boundedness_verdict(P)
    c = compactness_verdict(P)
    dn = dn_diagnostic(T, X, Y, N_list, profile=P, tol=tol) if N_list else None
    cc = closed_form_cross_check(T, X, Y, b, c, grid, tol) if T.kind in ("volterra", "cesaro") else None
    nc = little_space_precondition(T, Y, grid, tol)
    return P, AnalysisVerdict(b, c, dn, cc, nc)


__all__ = [
    "SUPPORTED_PAIRINGS",
    "CriterionProfile",
    "criterion_profile",
    "BoundednessVerdict",
    "CompactnessVerdict",
    "boundedness_verdict",
    "compactness_verdict",
    "DNVerdict",
    "dn_diagnostic",
    "KernelBound",
    "normalized_kernel",
    "kernel_lower_bound",
    "SymbolFamily",
    "parse_family",
    "symbol_scan",
    "Classification",
    "classify_symbol",
    "ClosedForm",
    "closed_form_verdict",
    "CrossCheck",
    "closed_form_cross_check",
    "AnalysisVerdict",
    "analyze",
    "little_space_precondition",
    "RayFit",
]
