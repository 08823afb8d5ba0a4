import numpy as np
import pytest
from hypothesis import given, strategies as st

from growthops.exceptions import InvalidWeightError
from growthops.weights import Weight, is_typical, parse_weight, weight_value


def test_power_examples():
    assert weight_value(Weight.power(1), 0) == 1
    assert weight_value(Weight.power(1), 0.6) == pytest.approx(0.64, abs=1e-15)
    assert weight_value(Weight.power(2), 0.6j) == pytest.approx(0.4096, abs=1e-15)


@given(st.floats(0.01, 0.99), st.floats(0, 2 * np.pi), st.sampled_from(["power:1", "power:2.5", "log", "custom:(1-t^2)*(2-t)"]))
def test_radial(r, theta, name):
    v = parse_weight(name)
    assert weight_value(v, r * np.exp(1j * theta)) == pytest.approx(weight_value(v, r), rel=1e-14)


def test_power_on_geometric_grid():
    j = np.arange(1, 41)
    h = 2.0 ** -j
    r = 1 - h
    vals = Weight.power(1.5).radial(r)
    assert np.allclose(vals, (h * (2 - h)) ** 1.5, rtol=1e-15, atol=0)


def test_log_weight_in_unit_interval():
    r = 1 - 2.0 ** -np.arange(0, 41)
    vals = Weight.log().radial(r)
    assert vals[0] == 1
    assert np.all((vals > 0) & (vals <= 1))


def test_typical_examples():
    assert is_typical(Weight.power(1))
    v = is_typical(Weight.custom("1"))
    assert not v and "decay" in v.reason
    assert is_typical(Weight.custom("(1-t^2)*(2-t)"))
    assert is_typical(Weight.log())


def test_not_monotone():
    v = is_typical(Weight.custom("(1-t^2)*(1+4*t^2)/5+0.0001"))
    assert not v.typical


def test_invalid_weights():
    with pytest.raises(InvalidWeightError):
        Weight.power(0)
    with pytest.raises(InvalidWeightError):
        parse_weight("triangle")
    with pytest.raises(InvalidWeightError):
        Weight.custom("t-1")  # zero at the origin
    with pytest.raises(InvalidWeightError):
        Weight.custom("1+t").radial(0.5)  # exceeds 1 after normalisation
    with pytest.raises(InvalidWeightError):
        weight_value(Weight.power(1), 1.0)


def test_names_round_trip():
    for name in ["power:1", "power:0.5", "log", "custom:(1-t^2)*(2-t)"]:
        assert parse_weight(name).name == name
