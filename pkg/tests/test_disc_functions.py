import numpy as np
import pytest
from hypothesis import given, strategies as st

from bmoakit.disc_functions import (
    AliasingError,
    AnalyticFunction,
    BoundaryGrid,
    DiscPoint,
    as_point,
    boundary_grid,
    dilate,
    dilation_radius,
    dilation_remainder,
    evaluate,
    is_power_of_two,
    next_power_of_two,
    roots_of_unity,
    sample_on,
)

coeff = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
coeffs = st.lists(coeff, min_size=1, max_size=12)


def test_power_of_two_helpers():
    assert is_power_of_two(1024) and not is_power_of_two(1000) and not is_power_of_two(0)
    assert next_power_of_two(1000) == 1024
    assert next_power_of_two(1024) == 1024


def test_disc_point_validation():
    assert abs(DiscPoint(0.5j)) == 0.5
    with pytest.raises(ValueError):
        DiscPoint(1.0)
    with pytest.raises(ValueError):
        as_point(1 - 1e-13)


def test_evaluate_constant_and_identity():
    assert AnalyticFunction.constant(3)(0.7) == 3
    z = np.array([0.1, -0.5j, 1.0])
    np.testing.assert_allclose(AnalyticFunction.identity()(z), z)


def test_evaluate_rejects_outside():
    with pytest.raises(ValueError):
        evaluate(AnalyticFunction([0, 1]), 1.01)


def test_coefficients_are_read_only():
    f = AnalyticFunction([1, 2])
    with pytest.raises(ValueError):
        f.coefficients[0] = 5


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        AnalyticFunction([1, np.nan])


def test_degree_and_truncation():
    f = AnalyticFunction([1, 2, 0, 0])
    assert f.degree == 1 and f.truncation_degree == 3
    assert AnalyticFunction.monomial(5).degree == 5


def test_boundary_grid_values():
    f = AnalyticFunction([1, 2, 3])
    g = boundary_grid(f, 16)
    np.testing.assert_allclose(g.samples, f(roots_of_unity(16)), atol=1e-13)


def test_boundary_grid_aliasing_and_power_of_two():
    f = AnalyticFunction(np.ones(10))
    with pytest.raises(AliasingError):
        boundary_grid(f, 16)
    with pytest.raises(ValueError):
        boundary_grid(f, 48)


@given(coeffs)
def test_grid_roundtrip(c):
    f = AnalyticFunction(c)
    m = next_power_of_two(2 * len(c))
    back = boundary_grid(f, m).coefficients(f.truncation_degree)
    np.testing.assert_allclose(back, f.coefficients, atol=1e-12 * (1 + np.abs(c).max()))


@given(coeffs, coeffs)
def test_grid_product_matches_convolution(c1, c2):
    f, g = AnalyticFunction(c1), AnalyticFunction(c2)
    m = next_power_of_two(2 * (len(c1) + len(c2)))
    prod = (boundary_grid(f, m) * boundary_grid(g, m)).coefficients(len(c1) + len(c2) - 2)
    scale = 1 + np.abs(c1).max() * np.abs(c2).max() * len(c1)
    np.testing.assert_allclose(prod, (f * g).coefficients, atol=1e-11 * scale)


@given(coeffs, st.floats(0, 0.99))
def test_dilate_evaluates_at_rz(c, r):
    f = AnalyticFunction(c)
    z = roots_of_unity(8)
    np.testing.assert_allclose(dilate(f, r)(z), f(r * z), atol=1e-10 * (1 + np.abs(c).sum()))


def test_dilation_helpers():
    f = AnalyticFunction([1, 1])
    assert dilation_radius(1) == 0.5
    np.testing.assert_allclose(dilation_remainder(f, 0.5).coefficients, [0, 0.5])
    with pytest.raises(ValueError):
        dilate(f, 1.0)


def test_arithmetic_and_compose():
    z = AnalyticFunction.identity()
    f = (1 + z) ** 3
    np.testing.assert_allclose(f.coefficients, [1, 3, 3, 1])
    g = z.compose(z * 0.5) - 0.5 * z
    assert np.allclose(g.coefficients, 0)
    h = f.compose(AnalyticFunction([0, 0, 1]))
    assert np.isclose(h(0.3), (1 + 0.09) ** 3)


def test_json_roundtrip():
    f = AnalyticFunction([1 + 2j, -0.5])
    g = AnalyticFunction.from_json(f.to_json())
    np.testing.assert_array_equal(f.coefficients, g.coefficients)


def test_sample_on_and_grid_ops():
    g = sample_on(lambda w: 1 / (2 - w), 64)
    c = g.coefficients(10)
    np.testing.assert_allclose(c, 0.5 ** np.arange(1, 12), atol=1e-14)
    with pytest.raises(ValueError):
        g + BoundaryGrid(np.ones(32))
    assert isinstance(g - 1, BoundaryGrid)
