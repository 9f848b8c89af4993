from __future__ import annotations

import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kolsym import jetcalc as jc
from kolsym import specfun as sf

mpmath.mp.dps = 40


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(1e-300, abs(complex(b)))


@given(st.floats(0.1, 30.0))
def test_gamma_real(x):
    assert rel(sf.gamma(x), mpmath.gamma(x)) <= 1e-13


@pytest.mark.parametrize("z", [0.5 + 1j, -2.3 + 0.4j, 3 - 2j])
def test_gamma_complex(z):
    assert rel(sf.gamma(z), mpmath.gamma(z)) <= 1e-13


@pytest.mark.parametrize("n", [0, -1, -5])
def test_gamma_poles(n):
    with pytest.raises(sf.PoleError):
        sf.gamma(n)
    assert sf.rgamma(n) == 0.0


@given(st.floats(-30, 30))
def test_airy_against_mpmath(z):
    ai, aip = sf.airy("Ai", z)
    bi, bip = sf.airy("Bi", z)
    for ours, ref in ((ai, mpmath.airyai(z)), (aip, mpmath.airyai(z, 1)),
                      (bi, mpmath.airybi(z)), (bip, mpmath.airybi(z, 1))):
        assert abs(ours - float(ref)) <= 1e-11 * max(1.0, abs(float(ref)))


@pytest.mark.parametrize("kind,ref", [
    ("J", mpmath.besselj), ("Y", mpmath.bessely), ("I", mpmath.besseli), ("K", mpmath.besselk),
])
@pytest.mark.parametrize("nu", [1 / 3, 1 / 6, 2.5, -0.75])
@pytest.mark.parametrize("z", [0.05, 1.3, 7.0, 25.0])
def test_bessel_against_mpmath(kind, ref, nu, z):
    v, d = sf.bessel(kind, nu, z)
    assert rel(v, ref(nu, z)) <= 1e-11
    assert rel(d, mpmath.diff(lambda s: ref(nu, s), z)) <= 1e-10


@given(st.floats(-2.5, 2.5), st.floats(0.3, 3.2).filter(lambda b: abs(b - round(b)) > 0.05), st.floats(-40, 40))
def test_kummer_m_against_mpmath(a, b, z):
    ours = sf.kummer_m(a, b, z)
    ref = float(mpmath.hyp1f1(a, b, z))
    assert abs(ours - ref) <= 1e-10 * max(1.0, abs(ref))


@given(st.floats(-2.5, 2.5), st.floats(0.3, 3.2).filter(lambda b: abs(b - round(b)) > 0.05), st.floats(0.05, 40))
def test_kummer_u_against_mpmath(a, b, z):
    try:
        ours = sf.kummer_u(a, b, z)
    except sf.PoleError:
        return
    ref = float(mpmath.hyperu(a, b, z))
    assert abs(ours - ref) <= 1e-9 * max(1.0, abs(ref))


@pytest.mark.parametrize("kind,ref", [("M", mpmath.whitm), ("W", mpmath.whitw)])
@pytest.mark.parametrize("k,m", [(0.25, 0.3), (-0.5, 1.25), (1.3, 0.4)])
@pytest.mark.parametrize("z", [0.2, 2.0, 9.0])
def test_whittaker_against_mpmath(kind, ref, k, m, z):
    assert rel(sf.whittaker(kind, k, m, z), ref(k, m, z)) <= 1e-10


def test_whittaker_w_at_connection_pole_raises():
    # 1/2 - m - k = -1 is a gamma pole of the M-to-U connection formula
    with pytest.raises(sf.PoleError):
        sf.whittaker("W", 1.1, 0.4, 2.0)


@pytest.mark.parametrize("call", [
    lambda: sf.airy("Ai", 31.0),
    lambda: sf.bessel("J", 0.5, 51.0),
    lambda: sf.bessel("J", 0.5, -1.0),
    lambda: sf.bessel("J", 6.5, 1.0),
    lambda: sf.kummer_m(0.5, 1.5, 41.0),
    lambda: sf.kummer_u(0.5, 1.5, -1.0),
    lambda: sf.bessel(sf.CylinderKind.TILDE_H1, 0.5, 1.0),
])
def test_envelope_errors(call):
    with pytest.raises(sf.EnvelopeError):
        call()


def test_integer_bessel_order_rejected():
    with pytest.raises(sf.EnvelopeError):
        sf.bessel("J", 2.0, 1.0)


def test_nonpositive_integer_b_rejected():
    with pytest.raises(sf.SpecialFunctionError):
        sf.kummer_m(0.5, -2, 1.0)


@pytest.mark.parametrize("kind,a,b", [("M", 0.3, 1.7), ("U", 0.3, 1.7), ("M", -1.2, 0.5)])
def test_kummer_jet_lift_matches_finite_differences(kind, a, b):
    gap = jc.finite_difference_check(lambda t, x, y: sf.lift_kummer(kind, a, b, t * x + 0.5), (1.1, 0.8, 0.0))
    assert gap <= 1e-5


def test_airy_lift_solves_airy_equation():
    t, _, _ = jc.seed(1.7, 0.0, 0.0)
    w = sf.lift_airy("Ai", t)
    assert abs(w.d2(0, 0) - 1.7 * w.v) <= 1e-13


def test_defining_ode_residuals():
    res = sf.max_ode_residuals(n=20)
    assert len(res) == len(sf.ode_cases())
    assert max(res.values()) <= 1e-8


def test_wronskians():
    assert max(sf.wronskian_gaps(n=10).values()) <= 1e-9


def test_kummer_transformation():
    assert sf.kummer_transformation_gap(n=20) <= 1e-12


@given(st.floats(-1.5, 1.5), st.floats(0.4, 2.6).filter(lambda b: abs(b - round(b)) > 0.05), st.floats(-15, 15))
def test_kummer_transformation_property(a, b, z):
    lhs = sf.kummer_m(a, b, z)
    rhs = math.exp(z) * sf.kummer_m(b - a, b, -z)
    assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(lhs), abs(rhs))
