from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kolsym import catalog as cat
from kolsym import jetcalc as jc
from kolsym import kramers as kr

GAMMAS = [1.0, 2.0, -0.5]
VARIANTS = [(name, g) for name in kr.VARIANTS for g in GAMMAS]
LABELS = ["Pt", "D", "K", "P3", "P2", "P1", "P0", "I"]
KOLMOGOROV_FAMILIES = [f for f in cat.ids() if cat.get(f).equation_for(cat.get(f).defaults()) == "kolmogorov"]


def theta(z1, z2):
    # heat kernel theta_1 = theta_22
    return jc.power(z1, -0.5) * jc.exp(-(z2 * z2) / (4 * z1))


def k34_gauss(g):
    def u(t, x, y):
        return jc.exp((3 * g * y + 2 * x) ** 2 / 16 + 1.5 * g * t) * theta(
            (4 / 3) * jc.exp(3 * g * t), jc.exp(1.5 * g * t) * (g * y + 2 * x))
    return u


def k34_heat(g):
    def u(t, x, y):
        return jc.exp((3 * g * y + 2 * x) ** 2 / 16 + 1.5 * g * t) * theta(
            4 * jc.exp(g * t), jc.exp(0.5 * g * t) * (3 * g * y + 2 * x))
    return u


def k316_gauss(g, a=32 / 3, sign=1.0, scale=1.0):
    def u(t, x, y):
        return jc.exp(g * t) * theta(a * jc.exp(1.5 * g * t), scale * jc.exp(0.75 * g * t) * (g * y + sign * 4 * x))
    return u


def k316_heat(g, a=32.0):
    def u(t, x, y):
        return jc.exp(g * t) * theta(a * jc.exp(0.5 * g * t), jc.exp(0.25 * g * t) * (3 * g * y + 4 * x))
    return u


def max_rel(variant, fn):
    v = kr.KramersVariant(*variant)
    return jc.sample_residuals(v.equation, jc.Solution(fn), kr.BOX, n=60, seed_value=8).max_rel


@pytest.mark.parametrize("variant", VARIANTS)
def test_structure_constants(variant):
    assert kr.structure_gap(variant, kr.sample_points(15, 3)) <= 1e-10


@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("label", LABELS)
def test_pushforward_matches_kolmogorov_field(variant, label):
    assert kr.pushforward_gap(variant, label, kr.sample_points(15, 4)) <= 1e-10


@settings(max_examples=20)
@given(st.sampled_from(VARIANTS), st.floats(-0.4, 0.4), st.floats(0.6, 1.9), st.floats(0.6, 1.9),
       st.floats(0.2, 3.0))
def test_phi_round_trip(variant, t, x, y, u):
    assert kr.round_trip_gap(variant, (t, x, y, u)) <= 1e-12 * max(1.0, abs(u))


@pytest.mark.parametrize("variant", [("k34", 1.0), ("k316", 2.0), ("k316", -0.5)])
@pytest.mark.parametrize("label", ["Pt", "D", "K", "P2", "P0"])
def test_flow_conjugation(variant, label):
    pts = kr.kolmogorov_points(variant, 4, 6)
    assert kr.conjugation_gap(variant, label, 0.1, pts) <= 1e-8


@pytest.mark.parametrize("variant", VARIANTS)
@pytest.mark.parametrize("fid", KOLMOGOROV_FAMILIES)
def test_pullbacks_solve_kramers(variant, fid):
    rep = kr.pullback_residuals(variant, cat.instantiate(fid, smoke=False), n=40)
    assert rep.points == 40 and rep.max_rel <= 1e-8


@pytest.mark.parametrize("variant", VARIANTS)
def test_perturbed_pullback_fails(variant):
    f = cat.perturbed(cat.instantiate("fundamental", smoke=False))
    assert kr.pullback_residuals(variant, f, n=40).max_rel > 1e-3


@pytest.mark.parametrize("g", GAMMAS)
@pytest.mark.parametrize("display", [k34_gauss, k34_heat])
def test_k34_displayed_solutions(g, display):
    assert max_rel(("k34", g), display(g)) <= 1e-10


@pytest.mark.parametrize("g", GAMMAS)
@pytest.mark.parametrize("display", [k316_gauss, k316_heat])
def test_k316_displayed_solutions_with_corrected_constants(g, display):
    assert max_rel(("k316", g), display(g)) <= 1e-10


@pytest.mark.parametrize("wrong", [
    lambda g: k316_gauss(g, a=128 / 3, sign=-1.0, scale=g),
    lambda g: k316_heat(g, a=128.0),
])
def test_k316_displays_with_unscaled_constants_fail(wrong):
    assert max_rel(("k316", 1.0), wrong(1.0)) > 1e-3


def test_uncorrected_phi316_x_factor_fails():
    v = kr.KramersVariant("k316", 1.0)
    f = cat.instantiate("fundamental", smoke=False)
    g = v.gamma

    def u(t, x, y):
        tt = jc.exp(g * t / 2)
        xt = jc.exp(g * t / 4) * (0.75 * g * y + x) / (2 * kr.SQRT2)
        yt = g * jc.exp(0.75 * g * t) * y / (2 * kr.SQRT2)
        return jc.exp(g * t) * f(tt, xt, yt)

    assert max_rel(("k316", 1.0), u) > 1e-3


@pytest.mark.parametrize("g", GAMMAS)
def test_k34_dilation_with_3u_maps_to_shifted_d(g):
    # (2/g) d_t + 3 u d_u pushes forward to D + 2 I, not D
    v = kr.KramersVariant("k34", g)
    wrong = kr.NumericField("D3", lambda t, x, y: (2 / g, 0.0, 0.0, 3.0))
    ref = kr.kolmogorov_fields()
    for p in kr.sample_points(5, 1):
        q = [jc.value_of(c) for c in kr.point_forward(v, *p)]
        got = kr.pushforward_at(v, wrong, p)
        assert not np.allclose(got, ref["D"].values(q))
        assert np.allclose(got, ref["D"].values(q) + 2 * ref["I"].values(q), atol=1e-12)


def test_force_constants():
    assert kr.KramersVariant("k34", 2.0).force == pytest.approx(-3.0)
    assert kr.KramersVariant("k316", 2.0).force == pytest.approx(0.75)


def test_inverse_needs_positive_time():
    with pytest.raises(kr.BranchError):
        kr.phi_map(("k34", 1.0), "inverse", (-0.5, 0.0, 0.0, 1.0))
    with pytest.raises(KeyError):
        kr.phi_map(("k34", 1.0), "sideways", (1.0, 0.0, 0.0, 1.0))


@pytest.mark.parametrize("args", [("k99", 1.0), ("k34", 0.0)])
def test_invalid_variant(args):
    with pytest.raises((KeyError, ValueError)):
        kr.KramersVariant(*args)
