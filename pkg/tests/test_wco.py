import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bmoakit.disc_functions import AliasingError, AnalyticFunction
from bmoakit.mobius import log_weight
from bmoakit.norms import SupSearchConfig, bmoa_seminorm, transform_norm
from bmoakit.wco import (
    BoundaryBasePointError,
    SelfMapError,
    SymbolPair,
    alpha,
    alpha_values,
    apply_wco,
    beta,
    boundary_set_integral,
    boundary_sup,
    classify_compactness,
    essnorm_estimate_boundary,
    essnorm_estimate_powers,
    norm_estimate_classic,
    norm_estimate_powers,
    power_seminorm_seq,
    tail_quantity,
    tail_sup,
    test_f as witness_f,
    test_g as witness_g,
    wco_seminorm,
)

from conftest import random_poly

LOG2 = math.log(2.0)
ONE = AnalyticFunction.constant(1.0)
Z = AnalyticFunction.identity()


def pair(psi, phi):
    return SymbolPair(AnalyticFunction(psi), AnalyticFunction(phi))


def test_self_map_validation():
    with pytest.raises(SelfMapError) as info:
        pair([1], [0.6, 0.6])
    assert info.value.sup == pytest.approx(1.2)
    assert abs(info.value.point - 1) < 1e-6
    assert pair([1], [0, 1]).phi_sup_estimate == pytest.approx(1.0)


def test_boundary_sup_polishes():
    f = AnalyticFunction([0.3, 0.2j, -0.4, 0.1])
    sup, pt = boundary_sup(f)
    dense = np.abs(f(np.exp(2j * np.pi * np.arange(2**16) / 2**16))).max()
    assert sup >= dense - 1e-12
    assert abs(abs(f(pt)) - sup) < 1e-12


def test_apply_wco_polynomial_and_aliasing():
    p = pair([1, 1], [0, 0.5])
    g = apply_wco(p, AnalyticFunction([0, 0, 1]))
    np.testing.assert_allclose(g.coefficients(3), [0, 0, 0.25, 0.25], atol=1e-14)
    with pytest.raises(AliasingError):
        apply_wco(p, AnalyticFunction(np.ones(40)), m=64)


def test_alpha_beta_closed_forms():
    idp = SymbolPair(ONE, Z)
    for a in (0, 0.5, 0.9j):
        assert alpha(idp, a) == pytest.approx(1.0, abs=1e-10)
        assert alpha(idp, a, method="pullback") == pytest.approx(1.0, abs=1e-10)
        assert beta(idp, a) == 0.0
    zz = SymbolPair(Z, Z)
    assert beta(zz, 0) == pytest.approx(LOG2)
    assert beta(zz, 0.6) == pytest.approx(log_weight(0.6) * 0.8)


@given(st.integers(0, 2**32 - 1), st.floats(0, 0.9), st.floats(0, 2 * math.pi))
def test_alpha_methods_agree(seed, r, t):
    rng = np.random.default_rng(seed)
    phi = random_poly(rng, 4)
    phi = phi / (np.abs(phi).sum() + 0.05)
    p = pair(random_poly(rng, 3), phi)
    a = r * complex(math.cos(t), math.sin(t))
    assert alpha(p, a) == pytest.approx(alpha(p, a, method="pullback"), rel=1e-8, abs=1e-12)


@given(st.integers(0, 2**32 - 1), st.floats(0, 0.9))
def test_beta_decomposition(seed, r):
    rng = np.random.default_rng(seed)
    p = pair(random_poly(rng, 5), [0.1, 0.5])
    expected = log_weight(0.1 + 0.5 * r) * transform_norm(p.psi, r, 2)
    assert beta(p, r) == pytest.approx(expected, rel=1e-12, abs=1e-14)


def test_touching_base_point_rejected():
    p = SymbolPair(ONE, AnalyticFunction([1.0]))
    assert np.isnan(alpha_values(p, [0.0])[0])
    with pytest.raises(BoundaryBasePointError):
        witness_f(p, 0.0)


def test_witnesses():
    p = SymbolPair(ONE, Z)
    for a in (0.0, 0.4, -0.7j):
        f = witness_f(p, a)
        b = complex(a)
        assert abs(f(b) + b) < 1e-15
        tay = f.taylor(200)
        w = np.array([0.3, -0.2j])
        np.testing.assert_allclose(tay(w), f(w), atol=1e-14)
        g = witness_g(p, a)
        assert g(b) == pytest.approx(log_weight(b))


def test_power_sequences():
    seq = power_seminorm_seq(SymbolPair(ONE, Z * 0.5), 10)
    np.testing.assert_allclose(seq[1:], 0.5 ** np.arange(1, 11), rtol=1e-6)
    seq = power_seminorm_seq(SymbolPair(ONE, Z), 10)
    assert seq[0] == 0.0
    np.testing.assert_allclose(seq[1:], 1.0, atol=1e-3)
    with pytest.raises(ValueError):
        power_seminorm_seq(SymbolPair(ONE, Z), 1000)


def test_tail_sup():
    t = tail_sup([5, 4, 3, 2, 1])
    assert t.value == 3 and t.trend == "decreasing" and t.window_start == 2
    assert tail_sup([1, 1, 1]).trend == "flat"
    assert tail_sup([0, 1, 2]).trend == "increasing"
    with pytest.raises(ValueError):
        tail_sup([])


def test_norm_estimates_closed_forms():
    est = norm_estimate_powers(SymbolPair(ONE, Z))
    assert est.value == pytest.approx(LOG2 + 1, abs=1e-3)
    assert set(est.parts) == {"center_term", "power_term", "beta_term"}
    half = norm_estimate_powers(SymbolPair(ONE, Z * 0.5))
    assert half.value == pytest.approx(LOG2 + 0.5, abs=1e-6)
    classic = norm_estimate_classic(SymbolPair(ONE, AnalyticFunction([0.0])))
    assert classic.value == pytest.approx(LOG2)
    zero = norm_estimate_powers(SymbolPair(AnalyticFunction([0.0]), Z))
    assert zero.value == 0.0


def test_report_serialisation():
    est = norm_estimate_powers(SymbolPair(ONE, Z * 0.5), n_max=8)
    d = est.to_dict()
    assert set(d) == {"value", "parts", "proxy_metadata", "warnings"}
    assert '"parts"' in est.to_json()


def test_essential_norm_estimates():
    assert essnorm_estimate_powers(SymbolPair(ONE, Z * 0.5)).value < 1e-6
    assert essnorm_estimate_powers(SymbolPair(ONE, Z)).value == pytest.approx(1.0, abs=1e-3)
    b = essnorm_estimate_boundary(SymbolPair(ONE, Z))
    assert b.value == pytest.approx(1.0, abs=1e-6)
    assert "abs_a_value" in b.proxy_metadata
    assert essnorm_estimate_boundary(SymbolPair(AnalyticFunction([0.5]), Z)).value == pytest.approx(0.5, abs=1e-6)


def test_classification():
    assert classify_compactness(SymbolPair(ONE, Z * 0.5)).verdict == "compact"
    assert classify_compactness(SymbolPair(ONE, Z)).verdict == "non_compact"
    assert classify_compactness(SymbolPair(Z, Z)).verdict == "non_compact"


def test_wco_seminorm_of_mobius_witness():
    p = SymbolPair(ONE, Z)
    res, at0 = wco_seminorm(p, witness_f(p, 0.5))
    assert res.value == pytest.approx(1.0, abs=1e-3)
    assert at0 == 0.0  # f_a(0) = sigma_b(0) - b = 0


def test_boundary_set_integrals():
    p = SymbolPair(ONE, Z * 0.5)
    assert boundary_set_integral(p, 0.0, 0.6) == 0.0
    full = SymbolPair(ONE, Z)
    assert boundary_set_integral(full, 0.0, 0.5) == pytest.approx(1.0)
    vals = [boundary_set_integral(full, 0.3, t, "Etilde") for t in (0.2, 0.5, 0.9)]
    assert vals == sorted(vals, reverse=True)


def test_tail_quantity():
    zero = SymbolPair(AnalyticFunction([0.0]), Z)
    assert tail_quantity(zero, 0.9, [0.99]).value == 0.0
    small = SymbolPair(ONE, Z * 0.5)
    assert tail_quantity(small, 0.9, [0.99]).value == 0.0
    with pytest.raises(ValueError):
        tail_quantity(small, 1.0, [0.99])
