import numpy as np
import pytest
from hypothesis import given, strategies as st

from growthops import series as ts
from growthops.exceptions import DomainError, UnsupportedError
from growthops.series import TaylorSeries

coeff_lists = st.lists(st.floats(-10, 10, allow_nan=False, allow_subnormal=False), min_size=1, max_size=20)


def poly(c):
    return TaylorSeries.polynomial(c)


def test_eval_examples():
    f = poly([1, 2, 3])
    assert ts.evaluate(f, 0) == 1
    assert ts.evaluate(f, 0.5) == pytest.approx(2.75, abs=1e-15)
    geo = TaylorSeries(np.ones(65))
    assert abs(ts.evaluate(geo, 0.5) - 2) < 1e-12


def test_eval_outside_radius():
    geo = TaylorSeries(np.ones(65))
    assert geo.valid_radius < 1
    with pytest.raises(DomainError):
        ts.evaluate(geo, 0.999)


def test_invariants():
    f = TaylorSeries(np.ones(65))
    assert len(f.coeffs) == f.degree_cap + 1
    assert 0 < f.valid_radius <= 1
    # tail beyond the cap at the valid radius is below tolerance
    r = f.valid_radius
    assert r ** 65 / (1 - r) < 1e-11


def test_derivative_examples():
    assert np.allclose(ts.derivative(poly([1, 2, 3])).coeffs, [2, 6])
    assert np.allclose(ts.derivative(poly([5])).coeffs, [0])
    assert np.allclose(ts.derivative(poly([1, 1, 1, 1])).coeffs, [1, 2, 3])


def test_antiderivative_examples():
    assert np.allclose(ts.antiderivative(poly([1, 2, 3])).coeffs, [0, 1, 1, 1])
    assert np.allclose(ts.antiderivative(poly([0])).coeffs, [0, 0])


@given(coeff_lists)
def test_derivative_undoes_antiderivative(c):
    f = poly(c)
    # exact up to one rounding in a_k / (k+1) * (k+1)
    assert np.allclose(ts.derivative(ts.antiderivative(f)).coeffs, f.coeffs, rtol=4e-16, atol=0)


def test_multiply_examples():
    assert np.allclose(ts.multiply(poly([1, 1]), poly([1, -1])).coeffs, [1, 0, -1])
    f = poly([1, 2, 3])
    assert np.allclose(ts.multiply(f, poly([1])).coeffs, f.coeffs)
    geo = TaylorSeries(np.ones(33))
    prod = ts.multiply(geo, poly([1, -1]))
    assert np.allclose(prod.coeffs, np.eye(1, 33)[0])


def test_multiply_pointwise(rng):
    f = TaylorSeries(0.5 ** np.arange(60) * rng.normal(size=60))
    g = TaylorSeries(0.4 ** np.arange(60) * rng.normal(size=60))
    p = ts.multiply(f, g)
    r = min(p.valid_radius, 0.9)
    z = r * np.sqrt(rng.uniform(size=100)) * np.exp(2j * np.pi * rng.uniform(size=100))
    assert np.max(np.abs(ts.evaluate(p, z) - ts.evaluate(f, z) * ts.evaluate(g, z))) < 1e-10
    assert p.valid_radius == min(f.valid_radius, g.valid_radius)


@given(coeff_lists, coeff_lists, st.floats(-3, 3), st.floats(-3, 3))
def test_eval_linear(a, b, alpha, beta):
    f, g = poly(a), poly(b)
    z = 0.3 + 0.4j
    lhs = ts.evaluate(alpha * f + beta * g, z)
    rhs = alpha * ts.evaluate(f, z) + beta * ts.evaluate(g, z)
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(rhs) + abs(alpha) * 30 + abs(beta) * 30)


def test_dilate_examples():
    assert np.allclose(ts.dilate(poly([0, 0, 1]), 0.5).coeffs, [0, 0, 0.25])
    d0 = ts.dilate(poly([3, 2, 1]), 0.0)
    assert np.allclose(d0.coeffs, [3])
    with pytest.raises(DomainError):
        ts.dilate(poly([1]), 1.0)
    with pytest.raises(DomainError):
        ts.dilate(poly([1]), -0.1)


@given(coeff_lists, st.floats(0, 0.99), st.floats(0, 0.9), st.floats(0, 2 * np.pi))
def test_dilate_identity(c, r, rho, theta):
    f = poly(c)
    z = rho * np.exp(1j * theta)
    scale = 1 + np.sum(np.abs(c))
    assert abs(ts.evaluate(ts.dilate(f, r), z) - ts.evaluate(f, r * z)) <= 1e-12 * scale


def test_compose_examples():
    assert np.allclose(ts.compose_at_zero(poly([0, 0, 1]), poly([0, 0.5])).coeffs[:3], [0, 0, 0.25])
    f = poly([1, -2, 3, 0.5])
    assert np.allclose(ts.compose_at_zero(f, poly([0, 1])).coeffs[:4], f.coeffs)
    geo = TaylorSeries(np.ones(33))
    comp = ts.compose_at_zero(geo, poly([0, 0, 1]))
    assert np.allclose(comp.coeffs[:12], [1, 0] * 6)


def test_compose_pointwise(rng):
    f = TaylorSeries(0.5 ** np.arange(40))
    phi = poly([0, 0.5, 0.25])
    comp = ts.compose_at_zero(f, phi)
    z = 0.5 * np.exp(1j * rng.uniform(0, 2 * np.pi, 20))
    assert np.max(np.abs(ts.evaluate(comp, z) - ts.evaluate(f, ts.evaluate(phi, z)))) < 1e-10


def test_compose_needs_zero_base_point():
    with pytest.raises(UnsupportedError):
        ts.compose_at_zero(poly([1, 1]), poly([0.1, 0.5]))
