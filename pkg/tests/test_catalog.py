from __future__ import annotations

import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from kolsym import catalog as cat
from kolsym import group as grp
from kolsym import jetcalc as jc

FIDS = cat.ids()


def residual(fid, sol=None, vals=None, n=60):
    fam = cat.get(fid)
    vals = {**fam.defaults(), **(vals or {})}
    sol = sol or cat.instantiate(fid, vals, smoke=False)
    return jc.sample_residuals(fam.equation_for(vals), sol, fam.box_for(vals), n=n, seed_value=3)


def test_family_count_and_groups():
    assert len(FIDS) >= 18
    prefixes = {f.split(".")[0] for f in FIDS}
    assert {"fundamental", "s5", "s6", "s8", "heatisq"} <= prefixes


@pytest.mark.parametrize("fid", FIDS)
def test_family_solves_its_equation(fid):
    assert residual(fid).max_rel <= 1e-8


@pytest.mark.parametrize("fid", FIDS)
def test_perturbation_is_detected(fid):
    sol = cat.perturbed(cat.instantiate(fid, smoke=False))
    assert residual(fid, sol=sol).max_rel > 1e-3


@pytest.mark.parametrize("fid,slot", [
    (fid, slot) for fid in FIDS for slot, _ in cat.get(fid).slots if slot != "theta_mu"
])
@pytest.mark.parametrize("plugin", sorted(cat.HEAT_PLUGINS))
def test_every_heat_plugin_in_every_slot(fid, slot, plugin):
    fam = cat.get(fid)
    sol = cat.instantiate(fid, plugins={slot: plugin}, smoke=False)
    rep = jc.sample_residuals(fam.equation_for(fam.defaults()), sol, fam.box_for(fam.defaults()), n=30,
                              seed_value=5)
    assert rep.max_rel <= 1e-8


@pytest.mark.parametrize("family", ["euler", "cylinder", "s13"])
def test_theta_mu_plugins(family):
    sol = cat.instantiate("s5.theta12", plugins={"theta_mu": cat.theta_mu(family)}, smoke=False)
    assert residual("s5.theta12", sol=sol).max_rel <= 1e-8


@pytest.mark.parametrize("fid,vals", [
    ("s6.kummer21", {"kappa": -1.3}), ("s6.kummer21", {"kappa": 2.2}),
    ("s6.kummer24", {"mu": 1.5, "branch": -1.0}), ("s6.kummer25", {"mu": 1.5, "branch": -1.0}),
    ("s5.heat15", {"eps": -1.0}), ("s8.p2sq", {"eps": -1.0}),
    ("heatisq.euler", {"mu": -0.4}), ("heatisq.cylinder", {"mu": 0.05, "eps": -1.0}),
    ("fundamental", {"t0": 0.3, "x0": -0.5, "y0": 0.8}),
])
def test_parameter_variants(fid, vals):
    assert residual(fid, vals=vals).max_rel <= 1e-8


@settings(max_examples=15)
@given(st.floats(-2, 2), st.floats(-2, 2))
def test_superposition_of_solutions(c1, c2):
    a = cat.instantiate("s6.exp22", smoke=False)
    b = cat.instantiate("fundamental", {"t0": -0.2}, smoke=False)
    s = cat.superpose([(c1, a), (c2, b)])
    rep = jc.sample_residuals("kolmogorov", s, ((0.5, 2.0), (-1, 1), (-1, 1)), n=30)
    assert rep.max_rel <= 1e-8


def test_superpose_rejects_mixed_arity():
    a = cat.instantiate("s6.const", smoke=False)
    b = cat.instantiate("heatisq.euler", smoke=False)
    with pytest.raises(cat.CatalogError):
        cat.superpose([(1.0, a), (1.0, b)])
    with pytest.raises(cat.CatalogError):
        cat.superpose([])


@pytest.mark.parametrize("gap", [0.3, 1.0, 2.5])
def test_normalization_quadrature(gap):
    assert cat.normalization_integral(gap, x0=0.4, y0=-0.2) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("gap", [0.5, 1.5])
def test_normalization_against_adaptive_quadrature(gap):
    # independent route: adaptive quadrature on a box wide enough for the Gaussian tails
    x0, y0 = 0.2, -0.3

    def f(y, x):
        return float(grp.fundamental_solution_value(gap, x, y, 0.0, x0, y0))

    sx = math.sqrt(8 * gap)
    sy = math.sqrt(gap ** 3)
    cy = y0 + x0 * gap
    val, _ = integrate.dblquad(f, x0 - 10 * sx, x0 + 10 * sx, lambda x: cy - 12 * sy - abs(x - x0) * gap,
                               lambda x: cy + 12 * sy + abs(x - x0) * gap, epsabs=1e-13, epsrel=1e-12)
    assert val == pytest.approx(1.0, abs=1e-8)


def test_unknown_family_and_parameters():
    with pytest.raises(cat.CatalogError):
        cat.get("nope")
    with pytest.raises(cat.SchemaError):
        cat.instantiate("s6.exp22", {"C9": 1.0})
    with pytest.raises(cat.SchemaError):
        cat.instantiate("s5.heat15", {"eps": 0.5})
    with pytest.raises(cat.SchemaError):
        cat.instantiate("s5.heat16", plugins={"theta": "nope"})
    with pytest.raises(cat.SchemaError):
        cat.instantiate("s5.heat16", plugins={"phi": "kernel"})


def test_alias_resolves():
    assert cat.get("s5.kummer21").id == "s6.kummer21"


def test_manifest_is_deterministic_json():
    a, b = cat.manifest_json(), cat.manifest_json()
    assert a == b
    data = json.loads(a)
    assert [f["id"] for f in data["families"]] == FIDS
