from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kolsym import jetcalc as jc
from kolsym import reduce as rd

SPECS = rd.specs() + [rd.gauss_spec_1_3()]
CASES = [(s.instance, name) for s in SPECS for name in s.solutions]
BY_INSTANCE = {s.instance: s for s in SPECS}


@pytest.mark.parametrize("instance,solution", CASES)
def test_consistency(instance, solution):
    spec = BY_INSTANCE[instance]
    rep = rd.consistency_check(spec, spec.solutions[solution], n=80)
    assert rep.points == 80
    assert rep.max_reduced <= 1e-8
    assert rep.max_kolmogorov <= 1e-8
    assert rep.negative_control_fires
    assert rep.implication_holds


def test_every_row_has_a_solution():
    assert {s.row for s in rd.specs()} == set(rd.ROWS)
    assert all(s.solutions for s in SPECS)


@pytest.mark.parametrize("instance", sorted(s.instance for s in rd.specs()))
def test_get_spec_round_trip(instance):
    assert rd.get_spec(instance).instance == instance


def test_get_spec_unknown():
    with pytest.raises(KeyError):
        rd.get_spec("1.1[nope]")


def test_spec_serialises():
    d = rd.specs("2.3")[0].to_dict()
    assert d["row"] == "2.3" and d["arity"] == 1 and d["solutions"]


def test_wrong_solution_fails_consistency():
    spec = rd.specs("2.3")[0]
    wrong = rd.ReducedSolution("wrong", lambda z: jc.exp(z))
    rep = rd.consistency_check(spec, wrong, n=40)
    assert not rep.passed
    assert rep.max_reduced > 1e-3 and rep.max_kolmogorov > 1e-3


@pytest.mark.parametrize("factory,res", [
    (lambda: rd.series_row_1_1(), lambda w, z: w.d2(1, 1) - z[1] * w.d(0) - 3 * z[0] * w.v),
    (lambda: rd.series_row_1_3(1, Fraction(1)),
     lambda w, z: w.d2(1, 1) - (z[1] - 1.5 * z[0]) * w.d(0) + 0.5 * z[1] * w.d(1) + 0.5 * w.v),
    (lambda: rd.series_row_1_3(-1, Fraction(1, 3)),
     lambda w, z: w.d2(1, 1) - (z[1] + 1.5 * z[0]) * w.d(0) - 0.5 * z[1] * w.d(1) - (5 / 6) * w.v),
    (lambda: rd.series_row_1_4(Fraction(1, 2)),
     lambda w, z: w.d2(1, 1) - z[1] * w.d(0) + 3 * z[0] * w.d(1) + (0.5 + z[1] ** 2) * w.v),
])
def test_series_solutions_solve_their_equation(factory, res):
    w = factory()
    for z in jc.quasi_random_points(((-1.0, 1.0), (-0.8, 0.8)), 40, 1):
        jet = w(*jc.seed(*z, 0.0)[:2])
        scale = max(1.0, abs(jet.d2(1, 1)), abs(jet.d(0)), abs(jet.v))
        assert abs(res(jet, z)) <= 1e-10 * scale
        assert w.tail(*z) <= 1e-14


def test_series_coefficients_are_exact():
    w = rd.series_row_1_1(order=10)
    # w_22 = z2 w_1 + 3 z1 w with w(z1,0)=e^{z1}: second coefficient is 3 z1 / 2
    assert w.coefficients[2] == {1: Fraction(3, 2)}
    assert all(isinstance(c, Fraction) for p in w.coefficients for c in p.values())


@settings(max_examples=20)
@given(st.floats(0.6, 1.5))
def test_argument_perturbation_breaks_airy_reduction(z2):
    spec = rd.specs("2.3")[0]
    w = next(iter(spec.solutions.values()))
    pert = rd.argument_perturbation(w)
    assert rd.reduced_residual_rel(spec, w, (z2,)) <= 1e-9
    assert rd.reduced_residual_rel(spec, pert, (z2,)) > 1e-6


FORMS = [("1.1", {}), ("1.2", {"delta": 1}), ("1.2", {"delta": -1}), ("1.2", {"delta": 0}),
         ("1.3", {"eps_p": 1}), ("1.3", {"eps_p": -1}), ("1.4", {})]


@pytest.mark.parametrize("source,params", FORMS)
@pytest.mark.parametrize("branch", [1, -1])
def test_mapped_forms(source, params, branch):
    form, w, box = rd.mapped_solutions(source, branch, **params)
    rep = rd.mapped_check(form, w, box)
    assert rep.passed and rep.max_rel <= 1e-8


@pytest.mark.parametrize("source,params", FORMS)
def test_mapped_forward_inverse_round_trip(source, params):
    form = rd.mapped_form(source, 1, **params)
    for s1, s2 in [(0.3, 0.7), (-1.1, 1.9), (0.0, 0.4)]:
        z = form.inverse(s1, s2)
        back = form.forward(*z)
        assert np.allclose([jc.value_of(c) for c in back], [s1, s2], atol=1e-13)


def test_mapped_negative_control():
    form, w, box = rd.mapped_solutions("1.2", 1, delta=1)
    wrong = rd.mapped_form("1.2", 1, delta=-1)
    assert not rd.mapped_check(wrong, w, box).passed


@pytest.mark.parametrize("branch", [1, -1])
def test_mapped_isq_coefficient(branch):
    assert rd.mapped_potential_mu(branch) == pytest.approx(5 / 36, abs=1e-14)


def test_unknown_mapped_source():
    with pytest.raises(KeyError):
        rd.mapped_form("2.1")


def test_hidden_symmetry_dimensions():
    assert rd.hidden_symmetry_dimensions() == {
        "1.1": (1, 1), "1.2d": (2, 2), "1.2_0": (4, 3), "1.3": (1, 1), "1.4": (1, 1),
        "1.5": (6, 3), "1.6": (6, 4), "1.7": (6, 5),
    }
