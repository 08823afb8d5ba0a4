import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st

from growthops.exceptions import DomainError, ExprSyntaxError, SingularityError
from growthops.expr import check_self_map, differentiate_ast, eval_ast, parse, to_series
from growthops import series as ts

SYMBOLS = ["1/(1-z)", "log(1/(1-z))", "(1-z)^(-0.25)", "(1-z)^(-0.5)", "(1-z)^(-0.75)", "z^2", "exp(z)"]


def disk_points(rng, n, rmax=0.9):
    return rmax * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))


def test_parse_examples():
    assert eval_ast(parse("1/(1-z)"), 0) == 1
    assert eval_ast(parse("log(1/(1-z))"), 0) == 0
    assert abs(eval_ast(parse("(1-z)^(-0.5)"), 0.75) - 2) < 1e-15


def test_eval_examples():
    assert eval_ast(parse("z"), 0.3 + 0.4j) == 0.3 + 0.4j
    assert abs(eval_ast(parse("1/(1-z)"), 0.99) - 100) < 1e-10
    assert eval_ast(parse("exp(z)"), 0) == 1


def test_imaginary_unit_and_precedence():
    assert eval_ast(parse("i*i"), 0.2) == -1
    assert eval_ast(parse("2+3*z^2"), 2j) == pytest.approx(-10)
    assert eval_ast(parse("-z^2"), 3) == pytest.approx(-9)
    assert eval_ast(parse("2^-1"), 0) == pytest.approx(0.5)


def test_syntax_errors_report_position():
    with pytest.raises(ExprSyntaxError) as exc:
        parse("1 + * z")
    assert exc.value.position == 4
    with pytest.raises(ExprSyntaxError):
        parse("sin(z)")
    with pytest.raises(ExprSyntaxError):
        parse("(1-z")
    with pytest.raises(ExprSyntaxError):
        parse("z^z")


def test_zero_denominator_rejected():
    with pytest.raises(DomainError):
        parse("1/(z-z)")


def test_singularity_raised_not_returned():
    e = parse("1/z")
    with pytest.raises(SingularityError):
        eval_ast(e, 0)
    with pytest.raises(SingularityError):
        eval_ast(parse("log(z)"), 0)


def test_derivative_examples():
    d = differentiate_ast(parse("log(1/(1-z))"))
    assert abs(eval_ast(d, 0.5) - 2) < 1e-14
    assert eval_ast(differentiate_ast(parse("3")), 0.4) == 0
    assert abs(eval_ast(differentiate_ast(parse("(1-z)^(-0.5)")), 0) - 0.5) < 1e-15


@pytest.mark.parametrize("text", SYMBOLS)
def test_derivative_matches_central_differences(text, rng):
    e = parse(text)
    d = differentiate_ast(e)
    z = disk_points(rng, 32)
    step = 1e-6
    fd = (eval_ast(e, z + step) - eval_ast(e, z - step)) / (2 * step)
    exact = eval_ast(d, z)
    assert np.max(np.abs(fd - exact) / np.abs(exact)) < 1e-6


def test_to_series_examples():
    assert np.allclose(to_series(parse("1/(1-z)"), 3).coeffs, [1, 1, 1, 1])
    assert np.allclose(to_series(parse("z^2"), 4).coeffs, [0, 0, 1, 0, 0])
    assert np.allclose(to_series(parse("log(1/(1-z))"), 4).coeffs, [0, 1, 1 / 2, 1 / 3, 1 / 4])


@pytest.mark.parametrize("text", SYMBOLS + ["exp(z)*(1+z)^3/(2-z)", "(1+z)^0.5 - log(1+z/2)"])
def test_to_series_matches_eval(text, rng):
    e = parse(text)
    s = to_series(e)
    z = disk_points(rng, 50, rmax=min(0.5, s.valid_radius))
    assert np.max(np.abs(ts.evaluate(s, z) - eval_ast(e, z))) < 1e-10


def test_to_series_singular_at_zero():
    with pytest.raises(SingularityError):
        to_series(parse("1/z"), 4)


def test_print_round_trip(rng):
    z = disk_points(rng, 16)
    for text in SYMBOLS + ["-(z+1)^2/(3-i*z)", "exp(-z)*2.5e-3", "1-(1-z)^(-1.5)"]:
        e = parse(text)
        again = parse(str(e))
        assert np.allclose(eval_ast(again, z), eval_ast(e, z), rtol=1e-14, atol=0)


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6), st.floats(-0.9, 0.9), st.floats(-0.4, 0.4))
def test_polynomial_parse(coeffs, x, y):
    text = " + ".join(f"({c})*z^{k}" for k, c in enumerate(coeffs))
    z = complex(x, y)
    assert abs(eval_ast(parse(text), z) - sum(c * z**k for k, c in enumerate(coeffs))) < 1e-12


def test_principal_branch():
    z = -0.5 + 0.5j
    assert abs(eval_ast(parse("(1-z)^(-0.5)"), z) - (1 - z) ** -0.5) < 1e-15
    assert abs(eval_ast(parse("log(1/(1-z))"), z) - cmath.log(1 / (1 - z))) < 1e-15


def test_self_map_check():
    assert check_self_map(parse("z")).ok
    assert check_self_map(parse("(1+z)/2")).ok
    bad = check_self_map(parse("2*z"))
    assert not bad.ok and bad.max_modulus > 1.9
