import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heronheinz.errors import ConvergenceError, DomainError, RangeError
from heronheinz.quadrature import integrate, integrate_lanes


@pytest.mark.parametrize("tol", [1e-2, 1e-6, 1e-12])
def test_cubic_exact(tol):
    assert integrate(lambda x: x**3, 0.0, 1.0, tol).value == pytest.approx(0.25, abs=1e-15)


def test_constant():
    r = integrate(lambda x: 1.0, 0.25, 0.75)
    assert r.value == pytest.approx(0.5, abs=1e-15)
    assert r.evaluations > 0 and r.error_estimate >= 0


def test_exp_closed_form():
    r = integrate(math.exp, 0.0, 1.0, 1e-9)
    assert abs(r.value - (math.e - 1)) <= 1e-9
    assert r.error_estimate <= 1e-9


def test_kink_is_localised():
    # |x - 1/3| has a kink away from every dyadic node
    r = integrate(lambda x: abs(x - 1 / 3), 0.0, 1.0, 1e-10)
    assert abs(r.value - (1 / 18 + 4 / 18)) <= 1e-10


@pytest.mark.parametrize("a, b", [(1.0, 1.0), (2.0, 1.0)])
def test_bad_interval(a, b):
    with pytest.raises(RangeError):
        integrate(lambda x: x, a, b)


def test_bad_tolerance():
    with pytest.raises(RangeError):
        integrate(lambda x: x, 0.0, 1.0, 0.0)


def test_nan_raises_domain_error():
    with pytest.raises(DomainError):
        integrate(lambda x: math.nan if x > 0.5 else x, 0.0, 1.0)


def test_evaluation_cap():
    # an endless oscillation never meets an absurd tolerance
    with pytest.raises(ConvergenceError):
        integrate(lambda x: math.sin(1 / x) if x else 0.0, 0.0, 1.0, 1e-300)


def test_lanes_match_scalar_runs():
    shifts = np.array([0.1, 0.5, 0.9])

    def f(x, lanes):
        return np.abs(x - shifts[lanes])

    values, errs, evals = integrate_lanes(f, 0.0, 1.0, 3, 1e-10)
    for i, c in enumerate(shifts):
        ref = integrate(lambda x: abs(x - c), 0.0, 1.0, 1e-10).value
        assert values[i] == pytest.approx(ref, abs=2e-10)
        assert values[i] == pytest.approx((c * c + (1 - c) ** 2) / 2, abs=1e-10)
    assert np.all(errs <= 1e-10) and np.all(evals > 0)


def test_lanes_vector_valued():
    def f(x, lanes):
        return np.stack([x, x * x], axis=-1)

    values, _, _ = integrate_lanes(f, 0.0, 1.0, 2, 1e-12)
    np.testing.assert_allclose(values, [[0.5, 1 / 3], [0.5, 1 / 3]], atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(-2, 2), st.floats(0.05, 2), st.floats(0.05, 2))
def test_additivity(a, w1, w2):
    c, b = a + w1, a + w1 + w2
    f = lambda x: math.exp(math.sin(3 * x))  # noqa: E731
    tol = 1e-9
    whole = integrate(f, a, b, tol).value
    parts = integrate(f, a, c, tol).value + integrate(f, c, b, tol).value
    assert abs(whole - parts) <= 2 * tol


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=6), st.lists(st.floats(-5, 5), min_size=1, max_size=6))
def test_linearity(p, q):
    tol = 1e-9
    P, Q = np.polynomial.Polynomial(p), np.polynomial.Polynomial(q)
    lhs = integrate(lambda x: float(2 * P(x) - 3 * Q(x)), -1.0, 1.5, tol).value
    rhs = 2 * integrate(lambda x: float(P(x)), -1.0, 1.5, tol).value - 3 * integrate(lambda x: float(Q(x)), -1.0, 1.5, tol).value
    assert abs(lhs - rhs) <= 2 * tol * (1 + 5 * tol) + 1e-12 * max(1.0, abs(lhs))
