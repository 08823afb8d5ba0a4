"""Estimator-style front end: fit an operator, read verdicts off fitted attributes."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .criteria import _kernel_part, _target_weight_part, analyze, kernel_lower_bound
from .weights import gap
from .validation import (
    check_disk_points,
    check_grid,
    check_operator,
    check_positive_list,
    check_space,
    check_tolerances,
    check_trial_radii,
)


def regime_label(verdict) -> str:
    """``compact``, ``bounded``, ``unbounded`` or ``inconclusive``."""
    if verdict.compact.status == "yes":
        return "compact"
    if verdict.bounded.status == "yes":
        return "bounded"
    if verdict.bounded.status == "no":
        return "unbounded"
    return "inconclusive"


class OperatorAnalyzer(BaseEstimator):
    """Boundedness and compactness of an operator between two spaces.

    ``fit(operator)`` samples the criterion profile and sets ``profile_``,
    ``verdict_``, ``closed_form_`` and (when ``trial_radii`` is given)
    ``kernel_bound_``.  ``transform`` evaluates the profile at points of the
    disk and ``predict`` labels a batch of operators.
    """

    def __init__(
        self,
        source="hardy:2",
        target="bloch:power:1.5",
        n_rays=64,
        max_j=40,
        fit_window=12,
        N_list=(10, 100, 1000),
        trial_radii=None,
        tolerances=None,
    ):
        self.source = source
        self.target = target
        self.n_rays = n_rays
        self.max_j = max_j
        self.fit_window = fit_window
        self.N_list = N_list
        self.trial_radii = trial_radii
        self.tolerances = tolerances

    def _setup(self):
        X = check_space(self.source)
        Y = check_space(self.target)
        grid = check_grid(self.n_rays, self.max_j, self.fit_window)
        tol = check_tolerances(self.tolerances)
        Ns = check_positive_list(self.N_list, "N_list") if self.N_list else ()
        return X, Y, grid, tol, Ns

    def fit(self, operator, y=None):
        X, Y, grid, tol, Ns = self._setup()
        T = check_operator(operator)
        self.operator_ = T
        self.source_, self.target_ = X, Y
        self.profile_, self.verdict_ = analyze(T, X, Y, Ns, grid, tol)
        cc = self.verdict_.closed_form_cross_check
        self.closed_form_ = None if cc is None else cc.closed_form
        self.kernel_bound_ = None
        if self.trial_radii is not None:
            radii = check_trial_radii(self.trial_radii)
            self.kernel_bound_ = kernel_lower_bound(T, X, Y, radii, tol=tol)
        return self

    def transform(self, points):
        """Profile values ``v(z) ||T* K_z||`` at ``points``."""
        check_is_fitted(self, "profile_")
        z = check_disk_points(points)
        r = np.abs(z)
        g = gap(r)
        w = _target_weight_part(self.operator_, self.target_, r, g)
        return np.asarray(w * _kernel_part(self.operator_, self.source_, z, r, g), dtype=float)

    def predict(self, operators):
        """Regime label for each operator in ``operators``."""
        X, Y, grid, tol, Ns = self._setup()
        out = []
        for op in operators:
            _, verdict = analyze(check_operator(op), X, Y, (), grid, tol)
            out.append(regime_label(verdict))
        return np.array(out, dtype=object)

    def fit_predict(self, operator, y=None):
        return regime_label(self.fit(operator).verdict_)


__all__ = ["OperatorAnalyzer", "regime_label"]
