"""Command-line front end.

    growthops analyze --config job.json [--out report.json] [--csv profile.csv]
    growthops classify --g EXPR --family bloch:1
    growthops norm --space hardy:2 --f EXPR
    growthops profile --config job.json --csv profile.csv [--dn N]
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
from dataclasses import dataclass, field
from importlib import resources

import jsonschema
import numpy as np

from . import __version__
from ._config import DEFAULT_NORM_GRID, NormGrid, ProfileGrid, Tolerances
from .criteria import CriterionProfile, analyze, classify_symbol, criterion_profile, kernel_lower_bound
from .exceptions import DomainError, GrowthOpsError
from .asymptotics import _json_float
from .operators import OperatorSymbol
from .spaces import SpaceDescriptor, space_norm
from .validation import (
    check_grid,
    check_operator,
    check_positive_list,
    check_space,
    check_tolerances,
    check_trial_radii,
)

CSV_HEADER = ("ray_index", "theta", "j", "r", "value", "fitted_exponent")
CESARO_NOTE = (
    "C_g f(0) is taken as the continuous extension (first coefficient of the integral); "
    "the alternative convention C_g f(0) = 0 changes only the value at the origin"
)


class StageError(Exception):
    def __init__(self, stage: str, exc: Exception):
        self.stage = stage
        self.exc = exc
        super().__init__(f"{stage}: {type(exc).__name__}: {exc}")


@dataclass
class JobConfig:
    operator: OperatorSymbol
    source: SpaceDescriptor
    target: SpaceDescriptor
    grid: ProfileGrid
    norm_grid: NormGrid
    tolerances: Tolerances
    N_list: tuple = (10.0, 100.0, 1000.0)
    trial_radii: tuple = ()
    classify: list = field(default_factory=list)
    out: str | None = None
    csv: str | None = None
    raw: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, cfg: dict) -> "JobConfig":
        known = {"operator", "source", "target", "grid", "N_list", "trial_radii", "tolerances", "classify", "outputs"}
        unknown = set(cfg) - known
        if unknown:
            raise DomainError(f"unknown config keys {sorted(unknown)}")
        for key in ("operator", "source", "target"):
            if key not in cfg:
                raise DomainError(f"config needs {key!r}")
        g = dict(cfg.get("grid", {}))
        bad = set(g) - {"n_rays", "max_j", "fit_window", "angular_M"}
        if bad:
            raise DomainError(f"unknown grid keys {sorted(bad)}")
        grid = check_grid(g.get("n_rays", 64), g.get("max_j", 40), g.get("fit_window", 12))
        norm_grid = DEFAULT_NORM_GRID
        if "angular_M" in g:
            m = int(g["angular_M"])
            if m < 8:
                raise DomainError("angular_M must be at least 8")
            norm_grid = NormGrid(hardy_angles=m, bergman_angles=m, hardy_max_angles=max(m, DEFAULT_NORM_GRID.hardy_max_angles))
        classify = []
        for item in cfg.get("classify", []):
            if set(item) != {"g", "family"}:
                raise DomainError("classify entries need exactly 'g' and 'family'")
            classify.append((str(item["g"]), str(item["family"])))
        outputs = cfg.get("outputs", {})
        return cls(
            operator=check_operator(cfg["operator"]),
            source=check_space(cfg["source"]),
            target=check_space(cfg["target"]),
            grid=grid,
            norm_grid=norm_grid,
            tolerances=check_tolerances(cfg.get("tolerances")),
            N_list=check_positive_list(cfg.get("N_list", (10, 100, 1000)), "N_list"),
            trial_radii=check_trial_radii(cfg.get("trial_radii", ())),
            classify=classify,
            out=outputs.get("report"),
            csv=outputs.get("csv"),
            raw=cfg,
        )

    def effective(self) -> dict:
        return {
            "operator": self.operator.to_dict(),
            "source": self.source.name,
            "target": self.target.name,
            "grid": self.grid.as_dict(),
            "norm_grid": self.norm_grid.as_dict(),
            "tolerances": self.tolerances.as_dict(),
            "N_list": list(self.N_list),
            "trial_radii": list(self.trial_radii),
            "classify": [{"g": g, "family": f} for g, f in self.classify],
        }

    def fingerprint(self) -> str:
        payload = {k: self.effective()[k] for k in ("grid", "norm_grid", "tolerances")}
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def _stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (GrowthOpsError, ValueError, ArithmeticError, NotImplementedError) as exc:
        raise StageError(name, exc) from exc


def run_analysis(config: JobConfig) -> tuple[dict, CriterionProfile]:
    """Deterministic report for a job."""
    T, X, Y = config.operator, config.source, config.target
    P = _stage("profile", criterion_profile, T, X, Y, config.grid, config.tolerances)
    _, verdict = _stage("verdicts", analyze, T, X, Y, config.N_list, config.grid, config.tolerances, P)
    warnings = []
    if verdict.bounded.equivalence_flag:
        warnings.append("equivalence_flag: profile equals the operator norm only up to constants; no exact norm claim")
    for name, v in (("bounded", verdict.bounded), ("compact", verdict.compact)):
        if v.status == "inconclusive":
            warnings.append(f"{name} verdict inconclusive: {v.note}")
    if verdict.dn_condition is not None:
        warnings.append("dn_condition is a sufficient condition for compactness only")
    if T.kind == "cesaro":
        warnings.append(CESARO_NOTE)
    if Y.little:
        warnings.append(f"compactness into {Y.name} presumes boundedness into it; see necessary_condition")

    lower = None
    if config.trial_radii:
        if X.kind in ("hardy", "bergman"):
            lower = _stage(
                "kernel_bound",
                kernel_lower_bound,
                T,
                X,
                Y,
                config.trial_radii,
                config.norm_grid,
                config.tolerances,
            ).as_dict()
        else:
            warnings.append(f"kernel lower bound skipped: no normalised kernels for {X.name}")
    norm_estimates = {
        "upper": _json_float(P.sup_estimate),
        "lower": lower,
        "grid": {"profile": config.grid.as_dict(), "norm": config.norm_grid.as_dict()},
    }
    if lower is not None and verdict.bounded.status == "yes" and not verdict.bounded.equivalence_flag:
        upper = P.sup_estimate
        gap_rel = abs(upper - lower["value"]) / upper if upper else 0.0
        norm_estimates["relative_gap"] = gap_rel
        norm_estimates["agree"] = bool(gap_rel <= config.tolerances.norm_equality)

    classifications = []
    for g, fam in config.classify:
        c = _stage("classify", classify_symbol, g, fam, config.grid, config.tolerances)
        classifications.append({"g": g, **c.as_dict()})

    report = {
        "tool": {"name": "growthops", "version": __version__},
        "grid_fingerprint": config.fingerprint(),
        "config": config.effective(),
        "profile": P.summary(),
        "verdict": verdict.as_dict(),
        "norm_estimates": norm_estimates,
        "classifications": classifications,
        "warnings": warnings,
    }
    validate_report(report)
    return report, P


def report_schema() -> dict:
    return json.loads(resources.files("growthops").joinpath("report.schema.json").read_text(encoding="utf-8"))


def validate_report(report: dict) -> None:
    jsonschema.validate(report, report_schema())


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _num(x) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def emit_profile_csv(P: CriterionProfile, path, mask=None) -> int:
    """Write one row per sample; returns the row count.  Refuses to write an empty profile."""
    keep = np.ones(P.values.shape, dtype=bool) if mask is None else np.asarray(mask, dtype=bool)
    if P.values.size == 0 or not keep.any():
        raise DomainError("profile is empty after filtering; no CSV written")
    rows = []
    for k in range(P.values.shape[0]):
        e = P.fits[k].exponent
        for i in range(P.values.shape[1]):
            if keep[k, i]:
                rows.append((k, _num(P.theta[k]), int(P.j[i]), _num(P.r[i]), _num(P.values[k, i]), _num(e)))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(rows)
    return len(rows)


def _write(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise StageError("output", exc) from exc


def _load_config(path: str) -> JobConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise StageError("config", exc) from exc
    return _stage("config", JobConfig.from_dict, raw)


def cmd_analyze(args) -> int:
    config = _load_config(args.config)
    report, P = run_analysis(config)
    text = dumps_report(report)
    out = args.out or config.out
    if out:
        _write(out, text)
    else:
        sys.stdout.write(text)
    csv_path = args.csv or config.csv
    if csv_path:
        try:
            emit_profile_csv(P, csv_path)
        except OSError as exc:
            raise StageError("output", exc) from exc
    return 0


def cmd_profile(args) -> int:
    config = _load_config(args.config)
    P = _stage("profile", criterion_profile, config.operator, config.source, config.target, config.grid, config.tolerances)
    mask = None if args.dn is None else P.kernel_part > args.dn
    try:
        n = emit_profile_csv(P, args.csv, mask)
    except OSError as exc:
        raise StageError("output", exc) from exc
    except DomainError as exc:
        raise StageError("profile", exc) from exc
    print(f"wrote {n} rows to {args.csv}")
    return 0


def cmd_classify(args) -> int:
    c = _stage("classify", classify_symbol, args.g, args.family)
    print(json.dumps({"g": args.g, **c.as_dict()}, sort_keys=True, indent=2))
    return 0


def cmd_norm(args) -> int:
    X = _stage("config", check_space, args.space)
    est = _stage("norm", space_norm, X, args.f)
    print(json.dumps({"space": X.name, "f": args.f, **est.as_dict()}, sort_keys=True, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="growthops", description="Operator criteria on growth spaces of the disk.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full pipeline: profile, verdicts, bounds, JSON report")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("profile", help="write the criterion profile as CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--csv", required=True)
    p.add_argument("--dn", type=float, help="keep only samples in D_N for this N")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("classify", help="membership of a symbol g in a family")
    p.add_argument("--g", required=True)
    p.add_argument("--family", required=True, help="bloch:<gamma>, logbloch, lipschitz, little_growth:<w>, little_bloch:<w>")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("norm", help="norm of f in a space")
    p.add_argument("--space", required=True)
    p.add_argument("--f", required=True)
    p.set_defaults(func=cmd_norm)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StageError as exc:
        print(f"growthops: error in stage {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
