from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kolsym import heatisq as hq
from kolsym import jetcalc as jc
from kolsym import liealg as la
from kolsym import specfun as sf
from kolsym import sympoly as sp

PROBE = [(0.4, 0.9), (1.1, 2.3), (0.7, 0.5)]


def family_box(family):
    return ((0.3, 1.5), (0.3, 2.0)) if family == "s12" else hq.CYLINDER_BOX


@pytest.mark.parametrize("family", hq.FAMILIES)
def test_default_families_solve_the_equation(family):
    rep = jc.sample_residuals(hq.EQ, hq.family_solution(family), family_box(family), n=60)
    assert rep.max_rel <= 1e-8


@pytest.mark.parametrize("mu", [5 / 36, 0.05, -0.3, 0.25, 0.6])
def test_euler_family_across_mu(mu):
    sol = hq.euler_family(mu, 1.0, 0.7)
    rep = jc.sample_residuals(hq.equation_for(mu), sol, ((-1.0, 1.0), (0.3, 3.0)), n=60)
    assert rep.max_rel <= 1e-8


@given(st.floats(-2.0, 2.0).filter(lambda m: abs(m) > 1e-3 and abs(m - 0.25) > 1e-3))
def test_kappa_params_consistent(mu):
    kp = hq.KappaParams.of(mu)
    assert kp.consistent()
    assert kp.imaginary == (4 * mu > 1)


def test_kappa_rejects_zero_mu():
    with pytest.raises(ValueError):
        hq.KappaParams.of(0.0)


@pytest.mark.parametrize("mu", [5 / 36, 0.05, -0.3])
@pytest.mark.parametrize("eps", [1, -1])
def test_cylinder_resolution_is_unique(mu, eps):
    res = hq.resolve_cylinder(mu, eps)
    assert res.unique
    assert res.passing == [hq.shipped_cylinder_variant(eps).name]
    failing = [v for k, v in res.residuals.items() if k not in res.passing]
    assert len(failing) == 3 and min(failing) > 1e-3


def test_cylinder_outside_real_order_envelope():
    with pytest.raises(sf.EnvelopeError):
        hq.cylinder_family(0.6, 1)


@pytest.mark.parametrize("kind,nu", [("s12", 1.0), ("s12", 0.3), ("s13", 0.5), ("s13", -0.4)])
def test_whittaker_families(kind, nu):
    sol = hq.whittaker_family(kind, hq.DEFAULT_MU, nu, 1.0, 0.5)
    box = family_box(kind) if kind == "s12" else ((-1.0, 1.0), (0.3, 2.5))
    rep = jc.sample_residuals(hq.EQ, sol, box, n=60)
    assert rep.max_rel <= 1e-8


@pytest.mark.parametrize("V", list(la.heat_isq_basis().values()), ids=lambda V: V.label)
def test_basis_fields_are_symmetries(V):
    assert la.check_symmetry(V, sp.heat_isq_pde(Fraction(5, 36))).is_zero()


def test_subalgebras_close():
    closure = hq.subalgebra_closure()
    assert closure and all(closure.values())


@pytest.mark.parametrize("tag", ["Pt", "D", "K", "I"])
def test_flow_generators(tag):
    assert max(hq.hisq_exponential_gap(tag, p) for p in PROBE) <= 1e-6


small = st.floats(-0.2, 0.2)


@st.composite
def elements(draw):
    a, b, c = draw(small), draw(small), draw(small)
    return hq.HeatIsqGroupElement(1 + a, b, c, (1 + b * c) / (1 + a), draw(st.floats(0.5, 2.0)))


@given(elements(), elements())
def test_compose_matches_sequential_action(g1, g2):
    g = hq.hisq_compose(g1, g2)
    for p in PROBE:
        direct = hq.hisq_group_apply(g1, hq.hisq_group_apply(g2, (*p, 1.0)))
        comp = hq.hisq_group_apply(g, (*p, 1.0))
        assert all(abs(a - b) <= 1e-10 * max(1.0, abs(b)) for a, b in zip(comp, direct))


@given(elements())
def test_inverse(g):
    e = hq.hisq_compose(g, hq.hisq_inverse(g))
    for p in PROBE:
        out = hq.hisq_group_apply(e, (*p, 1.0))
        assert all(abs(a - b) <= 1e-12 for a, b in zip(out, (*p, 1.0)))


@given(elements())
def test_group_maps_solutions_to_solutions(g):
    moved = hq.hisq_act_on_solution(g, hq.family_solution("cylinder"))
    pts = [p for p in jc.quasi_random_points(((-0.3, 0.3), (0.5, 4.0)), 20, 3) if moved.domain(*p)]
    assert pts
    for p in pts:
        r, scale = jc.residual_terms(hq.EQ, moved, p)
        assert abs(r) <= 1e-8 * max(1.0, scale)


def test_singular_hyperplane():
    with pytest.raises(hq.SingularHyperplaneError):
        hq.hisq_group_apply(hq.hisq_elementary("K", 1.0), (1.0, 1.0, 1.0))


def test_unimodularity_enforced():
    with pytest.raises(ValueError):
        hq.HeatIsqGroupElement(2.0, 0.0, 0.0, 2.0)


def test_unknown_family():
    with pytest.raises(KeyError):
        hq.family_solution("nope")


def test_theta_mu_plugin_evaluates():
    ev, dom = hq.theta_mu_plugin()
    assert dom(0.2, 1.0)
    z1, z2 = jc.seed(0.2, 1.0)[:2]
    v = ev(z1, z2)
    assert math.isfinite(v.v)
