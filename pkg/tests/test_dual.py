from __future__ import annotations

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from frwspin import dual

finite = st.floats(-3, 3, allow_nan=False)


@given(finite)
def test_polynomial_derivative(x):
    assert np.isclose(dual.derivative(lambda t: t ** 3 - 2 * t, x, 1.0), 3 * x ** 2 - 2)


@given(finite)
def test_transcendental_derivatives(x):
    assert np.isclose(dual.derivative(np.sin, x, 1.0), np.cos(x))
    assert np.isclose(dual.derivative(np.cosh, x, 1.0), np.sinh(x))
    assert np.isclose(dual.derivative(lambda t: 1.0 / (1.0 + t * t), x, 1.0), -2 * x / (1 + x * x) ** 2)


def test_nested_second_derivative():
    f = lambda t: t ** 4
    d2 = dual.derivative(lambda s: dual.derivative(f, s, 1.0), 1.5, 1.0)
    assert np.isclose(d2, 12 * 1.5 ** 2)


def test_directional_derivative_of_array_function():
    x = np.array([0.3, -1.2, 2.0])
    v = np.array([1.0, 0.5, -2.0])
    f = lambda c: np.stack([c[0] * c[1], np.sin(c[2]), c[0] ** 2])
    expected = np.array([v[0] * x[1] + x[0] * v[1], np.cos(x[2]) * v[2], 2 * x[0] * v[0]])
    assert np.allclose(dual.derivative(f, x, v), expected)


def test_matrix_inverse_derivative():
    a = np.array([[2.0, 1.0], [0.5, 3.0]])
    da = np.array([[0.1, -0.2], [0.3, 0.4]])
    got = dual.derivative(lambda t: np.linalg.inv(a + t * da), 0.0, 1.0)
    ai = np.linalg.inv(a)
    assert np.allclose(got, -ai @ da @ ai)


def test_einsum_derivative_matches_product_rule():
    rng = np.random.default_rng(0)
    a, b, da = rng.normal(size=(3, 3)), rng.normal(size=(3, 3)), rng.normal(size=(3, 3))
    got = dual.derivative(lambda t: np.einsum("ij,jk->ik", a + t * da, b), 0.0, 1.0)
    assert np.allclose(got, da @ b)
