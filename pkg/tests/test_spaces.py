import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import gammaln

from growthops._config import DEFAULT_NORM_GRID
from growthops.exceptions import DomainError, UnsupportedError
from growthops.expr import parse
from growthops.series import TaylorSeries
from growthops.spaces import (
    FunctionHandle,
    SpaceDescriptor,
    little_space_membership,
    parse_space,
    point_eval_norm,
    space_norm,
)
from conftest import poly_text


def test_parse_space():
    assert parse_space("hardy:2") == SpaceDescriptor.hardy(2)
    assert parse_space("bergman:2:0.5") == SpaceDescriptor.bergman(2, 0.5)
    g = parse_space("growth:power:1:little")
    assert g.little and g.kind == "growth" and g.power_beta == 1
    assert parse_space("bloch:log").weight.kind == "log"
    for bad in ["hardy:1", "hardy:0.5", "bergman:2:-1", "hardy:2:little", "sobolev:2", "hardy:x"]:
        with pytest.raises(DomainError):
            parse_space(bad)


def test_point_eval_examples():
    assert point_eval_norm(parse_space("hardy:2"), 0.6) == 1.25
    assert point_eval_norm(parse_space("bergman:2:0"), 0) == 1
    b = parse_space("bloch:power:1")
    assert point_eval_norm(b, 0.6) == pytest.approx(math.log(1 / 0.64), rel=1e-14)
    assert b.point_eval_kind == "equivalent"


def test_point_eval_formulas():
    z = 0.3 + 0.7j
    g = 1 - abs(z) ** 2
    assert point_eval_norm(parse_space("hardy:3"), z) == pytest.approx(g ** (-1 / 3))
    assert point_eval_norm(parse_space("bergman:1.5:0.5"), z) == pytest.approx(g ** (-2.5 / 1.5))
    assert point_eval_norm(parse_space("growth:power:2"), z) == pytest.approx(g**-2)
    assert point_eval_norm(parse_space("bloch:power:0.5"), z) == 1
    assert point_eval_norm(parse_space("bloch:power:3"), z) == pytest.approx(g**-2)


def test_point_eval_blows_up():
    r = 1 - 2.0 ** -np.arange(1, 41)
    for name in ["hardy:2", "bergman:3:1", "growth:power:0.5", "bloch:power:1", "bloch:power:2"]:
        vals = point_eval_norm(parse_space(name), r)
        assert np.all(vals > 0) and np.all(np.diff(vals) > 0) and vals[-1] > 10


def test_point_eval_errors():
    with pytest.raises(UnsupportedError):
        point_eval_norm(parse_space("bloch:log"), 0.5)
    with pytest.raises(DomainError):
        point_eval_norm(parse_space("hardy:2"), 1.0)


def test_norm_examples():
    assert space_norm(parse_space("growth:power:2"), "1").value == 1
    k = "0.8660254037844386/(1-0.5*z)"  # (1-w^2)^(1/2) / (1 - w z), w = 1/2
    assert abs(space_norm(parse_space("hardy:2"), k).value - 1) < 1e-6
    est = space_norm(parse_space("growth:power:1"), "1/(1-z)")
    assert abs(est.value - 2) < 1e-3
    assert est.grid["angles"] == DEFAULT_NORM_GRID.sup_angles


def test_hardy_polynomial_oracle(rng):
    for _ in range(5):
        deg = rng.integers(0, 33)
        c = rng.normal(size=deg + 1)
        est = space_norm(parse_space("hardy:2"), poly_text(c))
        assert abs(est.value - np.sqrt(np.sum(c**2))) < 1e-8


@pytest.mark.parametrize("alpha", [0.0, 0.5, 2.0])
def test_bergman_monomials(alpha):
    X = parse_space(f"bergman:2:{alpha}")
    for k in range(0, 17, 4):
        # ||z^k||^2 = Gamma(k+1) Gamma(alpha+2) / Gamma(k+alpha+2) under the normalised measure
        exact = math.exp(0.5 * (gammaln(k + 1) + gammaln(alpha + 2) - gammaln(k + alpha + 2)))
        assert abs(space_norm(X, f"z^{k}" if k else "1").value - exact) < 1e-6


def test_bergman_p_not_two():
    # ||1||_{A^p} = 1 for any p; ||z||_{A^1} = int 2 r^2 dr = 2/3
    assert space_norm(parse_space("bergman:3:0"), "1").value == pytest.approx(1, abs=1e-12)
    # |z| = sqrt(r^2) is not polynomial in the quadrature variable r^2
    assert space_norm(parse_space("bergman:1:0"), "z").value == pytest.approx(2 / 3, abs=1e-6)


def test_bloch_seminorm():
    est = space_norm(parse_space("bloch:power:1"), "log(1/(1-z))")
    assert abs(est.value - 2) < 1e-3


def test_unbounded_growth_norm_flagged():
    est = space_norm(parse_space("growth:power:0.5"), "1/(1-z)")
    assert est.unbounded and not est.converged


def test_refinement_never_decreases():
    for name, f in [("growth:power:1", "1/(1-z)"), ("bloch:power:1.5", "(1-z)^(-0.25)"), ("growth:power:2", "exp(3*z)")]:
        X = parse_space(name)
        coarse = space_norm(X, f).value
        fine = space_norm(X, f, DEFAULT_NORM_GRID.refined()).value
        assert fine >= coarse


def test_kernel_identity():
    # |k_w(w)| = (1 - w^2)^(-1/2) = ||delta_w|| on H^2
    for w in (0.3, 0.9, 0.999):
        k = FunctionHandle.from_text(f"{math.sqrt(1 - w * w)!r}/(1-{w!r}*z)")
        assert k.value(w) == pytest.approx(point_eval_norm(parse_space("hardy:2"), w), rel=1e-12)


def test_function_handle_representations():
    geo = TaylorSeries(np.ones(200))
    h = FunctionHandle(ast=parse("1/(1-z)"), series=geo)
    assert h.value(0.3) == pytest.approx(1 / 0.7)
    with pytest.raises(DomainError):
        FunctionHandle(ast=parse("1/(1+z)"), series=geo)
    series_only = FunctionHandle.from_series(geo)
    assert not series_only.boundary_capable
    with pytest.raises(DomainError):
        series_only.value(0.999)


def test_little_space_examples():
    X = parse_space("growth:power:1:little")
    assert little_space_membership("1", X).status == "member"
    m = little_space_membership("1/(1-z)", X)
    assert m.status == "not_member" and abs(m.limit_estimate - 2) < 1e-2
    assert little_space_membership("log(1/(1-z))", X).status == "member"


def test_little_bloch():
    X = parse_space("bloch:power:1:little")
    assert little_space_membership("z^3", X).status == "member"
    assert little_space_membership("log(1/(1-z))", X).status == "not_member"


def test_little_requires_little_space():
    with pytest.raises(DomainError):
        little_space_membership("1", parse_space("growth:power:1"))


@settings(max_examples=10)
@given(st.floats(1.1, 4), st.floats(0.0, 0.95))
def test_hardy_norm_of_normalised_kernel(p, w):
    s = 2 / p
    k = f"{(1 - w * w) ** (1 / p)!r}*(1-{w!r}*z)^(-{s!r})"
    assert abs(space_norm(parse_space(f"hardy:{p}"), k).value - 1) < 1e-6
