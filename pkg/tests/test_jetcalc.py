from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kolsym import jetcalc as jc

coord = st.floats(min_value=0.2, max_value=1.5, allow_nan=False)


def wrong_kernel(t, x, y):
    # prefactor t^-1 instead of t^-2
    return jc.power(t, -1) * jc.exp(-(x * x) / t + 3 * x * y / (t * t) - 3 * y * y / (t * t * t))


def kernel(t, x, y):
    s = y - x * t
    return jc.power(t, -2) * jc.exp(-(x * x) / t - 3 * x * s / (t * t) - 3 * s * s / (t * t * t))


@given(coord, coord, coord)
def test_product_rule_matches_finite_differences(t, x, y):
    def f(a, b, c):
        return jc.sin(a * b) * jc.exp(c - a) + jc.sqrt(a + b * b)
    assert jc.finite_difference_check(f, (t, x, y)) <= 1e-5


@pytest.mark.parametrize("name,fn", [
    ("exp", jc.exp), ("log", jc.log), ("sqrt", jc.sqrt), ("sin", jc.sin), ("cos", jc.cos),
    ("sinh", jc.sinh), ("cosh", jc.cosh), ("atan", jc.atan), ("erf", jc.erf),
])
def test_elementary_lifts_match_finite_differences(name, fn):
    gap = jc.finite_difference_check(lambda t, x, y: fn(0.3 * t + 0.5 * x - 0.2 * y + 1.1), (0.7, 0.4, -0.3))
    assert gap <= 1e-5, name


@pytest.mark.parametrize("p", [-2, -0.5, 0.5, 1.5, 3])
def test_power_lift(p):
    gap = jc.finite_difference_check(lambda t, x, y: jc.power(t + x * x, p), (0.8, 0.6, 0.0))
    assert gap <= 1e-5


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_arithmetic_exact_on_polynomials(a, b):
    t, x, y = jc.seed(a, b, 0.5)
    u = t * t * x + 3 * x * y - y
    assert u.v == pytest.approx(a * a * b + 1.5 * b - 0.5)
    assert u.d(0) == pytest.approx(2 * a * b)
    assert u.d(1) == pytest.approx(a * a + 1.5)
    assert u.d2(0, 1) == pytest.approx(2 * a)
    assert u.d2(1, 2) == pytest.approx(3.0)
    assert u.d2(1, 1) == 0.0


def test_hessian_is_symmetric():
    t, x, y = jc.seed(0.6, -0.2, 0.9)
    u = jc.exp(t * x) * jc.cos(y * t)
    H = u.hessian()
    assert np.allclose(H, H.T)


def test_division_by_zero_value_raises():
    t, x, y = jc.seed(0.0, 1.0, 1.0)
    with pytest.raises(jc.JetDomainError):
        _ = 1 / t


@pytest.mark.parametrize("fn,arg", [(jc.log, -1.0), (jc.sqrt, 0.0), (jc.sign, 0.0)])
def test_domain_errors(fn, arg):
    with pytest.raises(jc.JetDomainError):
        fn(jc.Jet2(arg, (1.0, 0.0, 0.0)))


def test_fundamental_solution_residual():
    sol = jc.Solution(kernel, label="kernel")
    rep = jc.sample_residuals("kolmogorov", sol, ((0.3, 1.5), (-1, 1), (-1, 1)), n=100)
    assert rep.passed and rep.max_rel <= 1e-12


def test_negative_control_detected():
    sol = jc.Solution(wrong_kernel)
    rep = jc.sample_residuals("kolmogorov", sol, ((0.3, 1.5), (-1, 1), (-1, 1)), n=100)
    assert not rep.passed and rep.max_rel > 1e-3


def test_heat_residual_two_variables():
    sol = jc.Solution(lambda t, x: jc.exp(-t) * jc.sin(x), arity=2)
    rep = jc.sample_residuals("heat", sol, ((0.1, 1.0), (-2.0, 2.0)), n=50)
    assert rep.passed


@pytest.mark.parametrize("mu", [5 / 36, -0.2, 0.05])
def test_heat_isq_euler_type_solution(mu):
    # u = x^m with m(m - 1) + mu = 0 is a stationary solution
    m = 0.5 + math.sqrt(0.25 - mu)
    sol = jc.Solution(lambda t, x: jc.power(x, m), arity=2)
    rep = jc.sample_residuals(("heat_isq", mu), sol, ((0.1, 1.0), (0.2, 3.0)), n=50)
    assert rep.passed


def test_quasi_random_points_are_deterministic():
    box = ((0, 1), (-2, 2), (5, 6))
    a = jc.quasi_random_points(box, 30, 7)
    b = jc.quasi_random_points(box, 30, 7)
    assert np.array_equal(a, b)
    assert np.all(a[:, 1] >= -2) and np.all(a[:, 1] <= 2)
    assert not np.array_equal(a, jc.quasi_random_points(box, 30, 8))


def test_thin_domain_raises():
    sol = jc.Solution(kernel, domain=lambda t, x, y: x > 0.99)
    with pytest.raises(jc.DomainTooThinError):
        jc.sample_residuals("kolmogorov", sol, ((0.3, 1.5), (-1, 1), (-1, 1)), n=50)


def test_unknown_equation():
    with pytest.raises(KeyError):
        jc.equation("wave")


def test_report_serialises():
    sol = jc.Solution(kernel)
    rep = jc.sample_residuals("kolmogorov", sol, ((0.3, 1.5), (-1, 1), (-1, 1)), n=10)
    d = rep.to_dict()
    assert d["points"] == 10 and d["passed"] is True
