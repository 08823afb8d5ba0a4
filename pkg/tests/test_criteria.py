import math

import numpy as np
import pytest

from growthops.criteria import (
    AnalysisVerdict,
    BoundednessVerdict,
    CompactnessVerdict,
    SymbolFamily,
    analyze,
    boundedness_verdict,
    classify_symbol,
    closed_form_verdict,
    compactness_verdict,
    criterion_profile,
    dn_diagnostic,
    kernel_lower_bound,
    parse_family,
)
from growthops.exceptions import QuadratureError, UnsupportedError
from growthops.operators import OperatorSymbol
from growthops.spaces import parse_space as ps

H2 = ps("hardy:2")
B2 = ps("bloch:power:2")
B15 = ps("bloch:power:1.5")
G1 = ps("growth:power:1")
IDENTITY = OperatorSymbol.weighted_composition("1", "z")
LOG = "log(1/(1-z))"


def volterra(g):
    return OperatorSymbol.volterra(g)


def test_profile_examples():
    P = criterion_profile(IDENTITY, G1, G1)
    assert np.all(P.values == 1.0)
    P = criterion_profile(volterra(LOG), H2, B15)
    assert P.values[0, 1] == pytest.approx(1.5, rel=1e-14)
    assert np.allclose(P.values[0], 1 + P.r, rtol=1e-12)
    P = criterion_profile(OperatorSymbol.cesaro(LOG), G1, G1)
    assert P.values[0, 0] == 1.0
    assert P.equivalence_flag


def test_profile_invariants():
    P = criterion_profile(volterra("(1-z)^(-0.5)"), H2, B2)
    assert np.all(P.values >= 0)
    assert P.sup_estimate >= P.values.max()
    assert P.values.shape == (64, 41)
    assert all(f.residual < 0.05 for f in P.fits)
    assert len(P.samples) == 64 * 41


@pytest.mark.parametrize("beta", [0.5, 1, 2, 3.5])
def test_identity_profile_exact(beta):
    X = ps(f"growth:power:{beta}")
    P = criterion_profile(IDENTITY, X, X)
    assert np.max(np.abs(P.values - 1)) <= 4e-16


def test_unsupported_pairing_lists_supported():
    with pytest.raises(UnsupportedError) as exc:
        criterion_profile(IDENTITY, H2, B2)
    assert "volterra -> bloch" in str(exc.value)
    with pytest.raises(UnsupportedError):
        criterion_profile(volterra("z"), H2, ps("hardy:2"))
    with pytest.raises(UnsupportedError):
        criterion_profile(volterra("z"), H2, ps("growth:log"))


def test_boundedness_examples():
    v = boundedness_verdict(criterion_profile(IDENTITY, G1, G1))
    assert v.status == "yes" and v.norm_estimate == 1
    v = boundedness_verdict(criterion_profile(volterra(LOG), H2, B15))
    assert v.status == "yes" and abs(v.norm_estimate - 2) < 1e-3 and not v.equivalence_flag
    v = boundedness_verdict(criterion_profile(volterra("(1-z)^(-0.75)"), H2, B2))
    assert v.status == "no" and abs(v.divergence_exponent + 0.25) < 0.02


def test_compactness_examples():
    c = compactness_verdict(criterion_profile(volterra("(1-z)^(-0.25)"), H2, B2))
    assert c.status == "yes"
    P = criterion_profile(volterra("(1-z)^(-0.5)"), H2, B2)
    c = compactness_verdict(P)
    assert c.status == "no" and abs(c.limit_estimate - 0.5 * 2**1.5) < 1e-2
    c = compactness_verdict(criterion_profile(IDENTITY, G1, G1))
    assert c.status == "no" and c.limit_estimate == pytest.approx(1)


def test_compact_implies_bounded():
    with pytest.raises(AssertionError):
        AnalysisVerdict(BoundednessVerdict("inconclusive"), CompactnessVerdict("yes"))
    for g in ["(1-z)^(-0.25)", "(1-z)^(-0.5)", "(1-z)^(-0.75)", "z", LOG]:
        _, v = analyze(volterra(g), H2, B2, N_list=())
        assert v.compact.status != "yes" or v.bounded.status == "yes"


def test_dn_examples():
    d = dn_diagnostic(volterra("(1-z)^(-0.25)"), H2, B2, (10, 100, 1000))
    assert d.status == "holds"
    assert d.sups[0] > d.sups[1] > d.sups[2]
    d = dn_diagnostic(IDENTITY, G1, G1, (10, 100, 1000))
    assert d.status == "fails" and all(abs(s - 1) < 1e-6 for s in d.sups)
    d = dn_diagnostic(volterra("z"), H2, ps("bloch:power:1"), (10, 100, 1000))
    assert d.status == "holds" and d.sups[-1] < 0.05


def test_dn_empty_is_vacuous():
    d = dn_diagnostic(volterra("z"), H2, ps("bloch:power:1"), (1e30,))
    assert d.status == "holds" and "vacuous" in d.note


def test_kernel_lower_bound_examples():
    kb = kernel_lower_bound(IDENTITY, H2, ps("growth:power:0.5"), (0.5, 0.9))
    assert kb.value == pytest.approx(1, abs=1e-9)
    kb = kernel_lower_bound(volterra(LOG), H2, B15, (0.99,))
    assert kb.value >= 1.99 - 1e-9
    kb = kernel_lower_bound(volterra(LOG), H2, B15, (0.9, 0.99, 0.999))
    assert kb.bounds[0] < kb.bounds[1] < kb.bounds[2] <= 2
    assert abs(kb.bounds[2] - 1.999) < 1e-6


def test_kernel_bound_bergman():
    X = ps("bergman:2:1")
    kb = kernel_lower_bound(IDENTITY, X, ps("growth:power:1.5"), (0.3, 0.7))
    assert kb.value == pytest.approx(1, abs=1e-6)
    assert all(abs(n - 1) < 1e-6 for n in kb.test_norms)


def test_kernel_bound_requires_kernels():
    with pytest.raises(UnsupportedError):
        kernel_lower_bound(IDENTITY, G1, G1, (0.5,))


def test_kernel_bound_aborts_on_bad_quadrature():
    from growthops._config import NormGrid

    coarse = NormGrid(hardy_angles=8, hardy_max_angles=8)
    with pytest.raises(QuadratureError):
        kernel_lower_bound(IDENTITY, H2, ps("growth:power:0.5"), (0.99,), grid=coarse)


def test_norm_sandwich():
    for T, X, Y in [(volterra(LOG), H2, B15), (IDENTITY, H2, ps("growth:power:0.5"))]:
        P, v = analyze(T, X, Y, N_list=())
        kb = kernel_lower_bound(T, X, Y, (0.9, 0.99, 0.999))
        assert kb.value <= v.bounded.norm_estimate * (1 + 1e-9)
        assert abs(kb.value - v.bounded.norm_estimate) / v.bounded.norm_estimate < 0.02


def test_classify_examples():
    c = classify_symbol(LOG, SymbolFamily.bloch(1))
    assert c.status == "member" and abs(c.seminorm - 2) < 1e-3
    assert classify_symbol(LOG, SymbolFamily.bloch(0.5)).status == "not_member"
    c = classify_symbol("z", SymbolFamily.lipschitz())
    assert c.status == "member" and c.seminorm == pytest.approx(1)
    assert "|g'|" in c.interpretation


def test_classify_other_families():
    # LogB is strictly smaller than B
    assert classify_symbol("(1-z)^0.5", "logbloch").status == "member"
    assert classify_symbol(LOG, "logbloch").status == "not_member"
    assert classify_symbol(LOG, "lipschitz").status == "not_member"
    assert classify_symbol("1/(1-z)", "little_growth:1").status == "not_member"
    assert classify_symbol(LOG, "little_growth:1").status == "member"
    assert classify_symbol(LOG, "little_bloch:1").status == "not_member"
    assert classify_symbol("(1-z)^(0.5)", "little_bloch:1").status == "member"
    assert parse_family("little_bloch:power:2").weight.beta == 2


def test_closed_form_examples():
    cf = closed_form_verdict("volterra", H2, G1)
    assert cf.exponent == 1.5 and cf.symbol_space == "B_1.5"
    cf = closed_form_verdict("volterra", H2, ps("bloch:power:0.5"))
    assert cf.exponent == 0 and cf.regime == "lipschitz"
    cf = closed_form_verdict("cesaro", G1, G1)
    assert cf.exponent == 1 and cf.symbol_space == "B"


def test_closed_form_tables():
    # A^p_alpha -> H_beta with p < (alpha+2)/(beta+1): constants only
    assert closed_form_verdict("volterra", ps("bergman:1:0"), ps("growth:power:0.5")).regime == "constant_only"
    # B_gamma -> B_beta with gamma = beta: B_beta, LogB, B
    assert closed_form_verdict("cesaro", ps("bloch:power:0.5"), ps("bloch:power:0.5")).symbol_space == "B_0.5"
    assert closed_form_verdict("cesaro", ps("bloch:power:1"), ps("bloch:power:1")).symbol_space == "LogB"
    assert closed_form_verdict("volterra", ps("bloch:power:3"), ps("bloch:power:3")).symbol_space == "B"
    with pytest.raises(UnsupportedError):
        closed_form_verdict("wcomp", H2, G1)


def test_cesaro_volterra_verdicts_equal():
    for X, Y in [(H2, B2), (G1, G1), (ps("bergman:2:0"), ps("growth:power:1"))]:
        for s in (0.25, 0.5, 0.75):
            g = f"(1-z)^(-{s})"
            _, vt = analyze(volterra(g), X, Y, N_list=())
            _, vc = analyze(OperatorSymbol.cesaro(g), X, Y, N_list=())
            assert vt.bounded.status == vc.bounded.status


@pytest.mark.parametrize(
    "X,Y",
    [("hardy:2", "bloch:power:2"), ("hardy:2", "growth:power:1"), ("bergman:2:0", "bloch:power:3"), ("growth:power:1", "growth:power:1.5")],
)
def test_family_matches_table(X, Y):
    X, Y = ps(X), ps(Y)
    a = closed_form_verdict("volterra", X, Y).exponent
    expected = {-0.25: ("yes", "yes"), 0.0: ("yes", "no"), 0.25: ("no", "no")}
    for shift, (bounded, compact) in expected.items():
        s = a - 1 + shift
        _, v = analyze(volterra(f"(1-z)^({-s!r})"), X, Y, N_list=())
        assert (v.bounded.status, v.compact.status) == (bounded, compact), s
        assert v.closed_form_cross_check.status == "agrees"


def test_multiplication_consistency():
    for g in ["(1-z)^(-0.25)", "(1-z)^(-0.5)", "(1-z)^(-0.75)", LOG]:
        for v in ("power:2", "power:1.5", "log"):
            _, vt = analyze(volterra(g), H2, ps(f"bloch:{v}"), N_list=())
            from growthops.expr import parse

            _, vm = analyze(OperatorSymbol.multiplication(parse(g).derivative), H2, ps(f"growth:{v}"), N_list=())
            assert (vt.bounded.status, vt.compact.status) == (vm.bounded.status, vm.compact.status)


def test_little_target_necessary_condition():
    _, v = analyze(OperatorSymbol.weighted_composition("z^2", "z"), H2, ps("growth:power:1:little"), N_list=())
    assert v.necessary_condition.status == "member"
    _, v = analyze(volterra(LOG), H2, ps("bloch:power:1:little"), N_list=())
    assert v.necessary_condition.status == "not_member"
    _, v = analyze(volterra(LOG), H2, ps("growth:power:1:little"), N_list=())
    assert v.necessary_condition.status == "member"
    _, v = analyze(volterra(LOG), H2, B2, N_list=())
    assert v.necessary_condition is None


def test_bloch_source_sets_equivalence_flag():
    _, v = analyze(volterra("z"), ps("bloch:power:2"), ps("bloch:power:2"), N_list=())
    assert v.bounded.equivalence_flag


def test_nonidentity_composition():
    # phi(z) = z/2 keeps |phi| <= 1/2 so the profile decays like v(z)
    P, v = analyze(OperatorSymbol.weighted_composition("1", "z/2"), H2, G1, N_list=())
    assert v.compact.status == "yes"
    expect = (1 - P.r**2) / np.sqrt(1 - P.r**2 / 4)
    assert np.allclose(P.values[0], expect, rtol=1e-12)
