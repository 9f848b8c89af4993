from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kolsym import group as grp
from kolsym import jetcalc as jc

small = st.floats(-0.15, 0.15)
lam = st.floats(-0.3, 0.3)
BOX = ((0.3, 1.2), (-1.0, 1.0), (-1.0, 1.0))
PROBE = grp.generic_points(4, 11)


@st.composite
def elements(draw):
    a, b, c = draw(small), draw(small), draw(small)
    alpha, beta, gamma = 1 + a, b, c
    return grp.GroupElement(alpha, beta, gamma, (1 + beta * gamma) / alpha,
                            tuple(draw(lam) for _ in range(4)), draw(st.floats(0.5, 2.0)))


@given(elements(), elements(), elements())
def test_composition_is_associative(g1, g2, g3):
    lhs = grp.compose(grp.compose(g1, g2), g3)
    rhs = grp.compose(g1, grp.compose(g2, g3))
    assert grp.max_pointwise_gap(lhs, rhs, PROBE) <= 1e-9


@given(elements())
def test_inverse_and_identity(g):
    assert grp.max_pointwise_gap(grp.compose(g, grp.inverse(g)), grp.IDENTITY, PROBE) <= 1e-9
    assert grp.max_pointwise_gap(grp.compose(grp.inverse(g), g), grp.IDENTITY, PROBE) <= 1e-9
    assert grp.max_pointwise_gap(grp.compose(g, grp.IDENTITY), g, PROBE) <= 1e-12


@given(elements(), elements())
def test_compose_matches_sequential_action(g1, g2):
    assert grp.compose_maps_gap(g1, g2, PROBE) <= 1e-9


@given(elements())
def test_action_maps_solutions_to_solutions(g):
    src = grp.act_on_solution(grp.fundamental_from_constant(0.1, 0.2, -0.3), grp.constant_solution())
    moved = grp.act_on_solution(g, src)
    pts = [p for p in grp.generic_points(30, 5, BOX) if moved.domain(*p)][:8]
    assert pts
    for p in pts:
        r, scale = jc.residual_terms("kolmogorov", moved, p)
        assert abs(r) <= 1e-8 * max(1.0, scale)


@pytest.mark.parametrize("tag", ["Pt", "D", "K", "P3", "P2", "P1", "P0", "I", "rotation"])
def test_flows_have_the_right_generator(tag):
    assert max(grp.exponential_gap(tag, p) for p in grp.generic_points(5, 3)) <= 1e-6


@pytest.mark.parametrize("tag", ["Pt", "D", "K", "P3", "P2", "P1", "P0", "I", "rotation"])
def test_one_parameter_subgroup_law(tag):
    a, b = 0.3, -0.17
    lhs = grp.compose(grp.elementary(tag, a), grp.elementary(tag, b))
    assert grp.max_pointwise_gap(lhs, grp.elementary(tag, a + b), PROBE) <= 1e-12


def test_discrete_elements_are_involutions():
    J = grp.elementary("J")
    assert grp.max_pointwise_gap(grp.compose(J, J), grp.IDENTITY, PROBE) <= 1e-12
    Ip = grp.elementary("Iprime")
    assert grp.max_pointwise_gap(grp.compose(Ip, Ip), grp.IDENTITY, PROBE) <= 1e-12


def test_kprime_factorization():
    jk = grp.compose(grp.elementary("J"), grp.elementary("Kprime"))
    fac = grp.compose(grp.elementary("Pt", 1.0), grp.compose(grp.elementary("K", 1.0), grp.elementary("Pt", 1.0)))
    assert grp.max_pointwise_gap(jk, fac, grp.generic_points(25, 2)) <= 1e-10


@pytest.mark.parametrize("src", [(0.0, 0.0, 0.0), (0.2, 0.3, -0.1), (-0.25, -0.6, 0.4)])
def test_fundamental_solution_from_constant(src):
    fs = grp.act_on_solution(grp.fundamental_from_constant(*src), grp.constant_solution(1.0))
    pts = grp.generic_points(20, 9, ((0.4, 1.2), (-1.0, 1.0), (-1.0, 1.0)))
    for p in pts:
        ref = grp.fundamental_solution_value(*p, *src)
        assert abs(fs.value(*p) - ref) <= 1e-12 * abs(ref)


def test_literal_order_shifts_the_source():
    t0, x0, y0 = 0.2, 0.3, -0.1
    fs = grp.act_on_solution(grp.fundamental_from_constant(t0, x0, y0, literal_order=True),
                             grp.constant_solution())
    p = (0.9, 0.1, 0.2)
    ref = grp.fundamental_solution_value(*p, t0, x0, y0 + x0 * t0)
    assert fs.value(*p) == pytest.approx(ref, rel=1e-12)


def test_fundamental_solution_solves_equation():
    sol = jc.Solution(lambda t, x, y: grp.fundamental_solution_value(t, x, y, 0.1, 0.2, 0.3))
    rep = jc.sample_residuals("kolmogorov", sol, ((0.2, 1.5), (-1, 1), (-1, 1)), n=100)
    assert rep.max_rel <= 1e-10


def test_pushforward_table():
    reports = grp.verify_pushforward_table(0.4)
    assert reports and all(r.passed for _, r in reports)


def test_unimodularity_enforced():
    with pytest.raises(ValueError):
        grp.GroupElement(2.0, 0.0, 0.0, 2.0)


def test_singular_hyperplane():
    g = grp.elementary("K", 1.0)
    with pytest.raises(grp.SingularHyperplaneError):
        grp.point_map(g, 1.0, 0.0, 0.0)


def test_json_round_trip():
    g = grp.GroupElement(1.1, 0.2, -0.05, (1 + 0.2 * -0.05) / 1.1, (0.1, -0.2, 0.3, 0.05), -1.5)
    h = grp.GroupElement.from_json(g.to_json())
    assert h == g


def test_unknown_tag():
    with pytest.raises(KeyError):
        grp.elementary("Q")


def test_rotation_is_periodic():
    r = grp.elementary("rotation", 2 * math.pi)
    assert np.allclose(r.matrix(), np.eye(2), atol=1e-14)
