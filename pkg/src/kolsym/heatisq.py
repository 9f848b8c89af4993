"""Heat equation with inverse square potential, ``u_t = u_xx + mu x^-2 u``.

Solution families are :class:`~kolsym.jetcalc.Solution` builders of arity 2
in ``(t, x)``.  ``mu`` defaults to ``5/36``, the value produced by the
``<Pt>`` reduction of the Kolmogorov equation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import jetcalc as jc
from . import specfun as sf
from .jetcalc import Jet2, Solution
from .liealg import closure_check, heat_isq_basis, heat_isq_subalgebras

DEFAULT_MU = 5 / 36
EQ = ("heat_isq", DEFAULT_MU)


def equation_for(mu: float) -> tuple:
    return ("heat_isq", float(mu))


@dataclass(frozen=True)
class KappaParams:
    """``kappa = sqrt(1 - 4 mu) / 2`` and ``kappa' = kappa / 2``; ``imaginary`` when ``4 mu > 1``."""

    mu: float
    kappa: float
    kappa_prime: float
    imaginary: bool

    @classmethod
    def of(cls, mu: float) -> "KappaParams":
        if mu == 0:
            raise ValueError("mu must be nonzero")
        disc = 1 - 4 * mu
        k = 0.5 * math.sqrt(abs(disc))
        return cls(float(mu), k, k / 2, disc < 0)

    def consistent(self) -> bool:
        sign = -1 if self.imaginary else 1
        return abs(4 * sign * self.kappa ** 2 - (1 - 4 * self.mu)) < 1e-12 and self.kappa_prime == self.kappa / 2


# ---------------------------------------------------------------------------
# stationary (Euler) family


def euler_family(mu: float = DEFAULT_MU, C1: float = 1.0, C2: float = 0.0) -> Solution:
    """Stationary solutions ``sqrt|x| * (...)`` selected by ``sign(1 - 4 mu)``."""
    kp = KappaParams.of(mu)
    disc = 1 - 4 * mu

    if disc > 0:
        k = kp.kappa

        def ev(t, x):
            ax = jc.abs_power(x, 1.0)
            return C1 * jc.power(ax, 0.5 + k) + C2 * jc.power(ax, 0.5 - k)
        label = "power"
    elif disc == 0:
        def ev(t, x):
            ax = jc.abs_power(x, 1.0)
            return jc.sqrt(ax) * (C1 + C2 * jc.log(ax))
        label = "log"
    else:
        k = kp.kappa

        def ev(t, x):
            ax = jc.abs_power(x, 1.0)
            lg = k * jc.log(ax)
            return jc.sqrt(ax) * (C1 * jc.cos(lg) + C2 * jc.sin(lg))
        label = "oscillatory"
    return Solution(ev, lambda t, x: x != 0, f"heatisq.euler[{label}]", arity=2)


# ---------------------------------------------------------------------------
# cylinder family and its normalization resolution


@dataclass(frozen=True)
class CylinderVariant:
    """One candidate closed form ``e^{eps t} * R(x) * (C1 Z1 + C2 Z2)(x)``."""

    sqrt_prefactor: bool
    kinds: Tuple[str, str]

    @property
    def name(self) -> str:
        return ("sqrt(x)*" if self.sqrt_prefactor else "") + "/".join(self.kinds)


CYLINDER_CANDIDATES = tuple(
    CylinderVariant(sq, kinds) for sq in (False, True) for kinds in (("J", "Y"), ("I", "K"))
)


def _cylinder_solution(mu: float, eps: int, C1: float, C2: float, variant: CylinderVariant) -> Solution:
    kp = KappaParams.of(mu)
    if kp.imaginary:
        raise sf.EnvelopeError("imaginary-order cylinder functions (4 mu > 1) are outside the shipped envelope")
    nu = kp.kappa
    k1, k2 = variant.kinds

    def ev(t, x):
        z = jc.as_jet(x)
        val = C1 * sf.lift_bessel(k1, nu, z) + C2 * sf.lift_bessel(k2, nu, z)
        if variant.sqrt_prefactor:
            val = jc.sqrt(z) * val
        return jc.exp(eps * t) * val

    return Solution(ev, lambda t, x: 0 < x <= 50, f"heatisq.cylinder[eps={eps},{variant.name}]", arity=2)


CYLINDER_BOX = ((-0.5, 0.5), (0.3, 6.0))


@dataclass
class CylinderResolution:
    mu: float
    eps: int
    residuals: Dict[str, float]
    passing: List[str]

    @property
    def unique(self) -> bool:
        return len(self.passing) == 1

    def to_dict(self) -> dict:
        return {"mu": self.mu, "eps": self.eps, "residuals": self.residuals, "passing": self.passing,
                "unique": self.unique}


def resolve_cylinder(mu: float = DEFAULT_MU, eps: int = 1, n: int = 60, tol_rel: float = 1e-8,
                     seed_value: int = 42) -> CylinderResolution:
    """Run the residual oracle on every candidate normalization and report which pass."""
    res, passing = {}, []
    for v in CYLINDER_CANDIDATES:
        sol = _cylinder_solution(mu, eps, 1.0, 0.7, v)
        rep = jc.sample_residuals(equation_for(mu), sol, CYLINDER_BOX, n=n, seed_value=seed_value, tol_rel=tol_rel,
                                  domain=sol.domain)
        res[v.name] = rep.max_rel
        if rep.passed:
            passing.append(v.name)
    return CylinderResolution(float(mu), eps, res, passing)


def shipped_cylinder_variant(eps: int) -> CylinderVariant:
    """Variant confirmed by :func:`resolve_cylinder`: ``sqrt(x)`` with ``I/K`` for ``eps = 1``, ``J/Y`` for ``eps = -1``."""
    return CylinderVariant(True, ("I", "K") if eps == 1 else ("J", "Y"))


def cylinder_family(mu: float = DEFAULT_MU, eps: int = 1, C1: float = 1.0, C2: float = 0.0) -> Solution:
    if eps not in (-1, 1):
        raise ValueError("eps must be -1 or 1")
    return _cylinder_solution(mu, eps, C1, C2, shipped_cylinder_variant(eps))


# ---------------------------------------------------------------------------
# Whittaker families


def _complex_chain(s: Jet2, v: complex, d: complex, d2: complex, coef: complex) -> Jet2:
    """``Re(coef * F(i s))`` given ``F, F', F''`` at ``i s``."""
    return s.chain((coef * v).real, (coef * 1j * d).real, (coef * -d2).real)


def whittaker_family(kind: str = "s12", mu: float = DEFAULT_MU, nu: float = 1.0, C1: float = 1.0,
                     C2: float = 0.0) -> Solution:
    """Similarity (``s12``) and rotation-invariant (``s13``) solutions through Whittaker functions."""
    kp = KappaParams.of(mu)
    if kind == "s12":
        if kp.imaginary:
            b = 1j * kp.kappa_prime

            coef = C1 - 1j * C2

            def combo(k, arg):
                v, d, d2 = sf.whittaker_derivs("W", k, b, arg.v)
                return arg.chain((coef * v).real, (coef * d).real, (coef * d2).real)
        else:
            b = kp.kappa_prime

            def combo(k, arg):
                out = 0.0
                if C1:
                    out = out + C1 * sf.lift_whittaker("M", k, b, arg)
                if C2:
                    out = out + C2 * sf.lift_whittaker("W", k, b, arg)
                return out if isinstance(out, Jet2) else arg * 0.0

        def ev(t, x):
            sg = jc.sign(t)
            at = sg * t
            arg = x * x / (4 * at)
            ax = jc.abs_power(x, 1.0)
            pref = jc.power(at, nu) * jc.power(ax, -0.5) * jc.exp(-x * x / (8 * t))
            return pref * combo(-sg * nu, arg)

        cap = 5 if kp.imaginary else 40

        def dom(t, x):
            return t != 0 and x != 0 and x * x / (4 * abs(t)) <= cap

        return Solution(ev, dom, f"heatisq.whittaker.s12[nu={nu}]", arity=2)
    if kind == "s13":
        b = 1j * kp.kappa_prime if kp.imaginary else kp.kappa_prime
        k = 1j * nu
        coef = C1 - 1j * C2

        def ev(t, x):
            r = t * t + 1
            s = x * x / (2 * r)
            v, d, d2 = sf.whittaker_derivs("W", k, b, 1j * s.v if isinstance(s, Jet2) else 1j * s)
            w = _complex_chain(jc.as_jet(s), v, d, d2, coef)
            ax = jc.abs_power(x, 1.0)
            return jc.power(ax, -0.5) * jc.exp(-x * x * t / (4 * r) + 2 * nu * jc.atan(t)) * w

        def dom(t, x):
            return x != 0 and x * x / (2 * (t * t + 1)) <= 5

        return Solution(ev, dom, f"heatisq.whittaker.s13[nu={nu}]", arity=2)
    raise KeyError(f"unknown Whittaker family {kind!r}")


# ---------------------------------------------------------------------------
# essential group


class SingularHyperplaneError(ValueError):
    """The point lies on ``gamma*t + delta = 0``."""


@dataclass(frozen=True)
class HeatIsqGroupElement:
    alpha: float = 1.0
    beta: float = 0.0
    gamma: float = 0.0
    delta: float = 1.0
    sigma: float = 1.0

    def __post_init__(self) -> None:
        if abs(self.alpha * self.delta - self.beta * self.gamma - 1) > 1e-12:
            raise ValueError("SL2 part must be unimodular")
        if self.sigma == 0:
            raise ValueError("sigma must be nonzero")

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "delta": self.delta, "sigma": self.sigma}


HISQ_IDENTITY = HeatIsqGroupElement()


def hisq_elementary(tag: str, eps: float = 0.0) -> HeatIsqGroupElement:
    if tag == "Pt":
        return HeatIsqGroupElement(1.0, eps, 0.0, 1.0)
    if tag == "D":
        a = math.exp(eps / 2)
        return HeatIsqGroupElement(a, 0.0, 0.0, 1 / a)
    if tag == "K":
        return HeatIsqGroupElement(1.0, 0.0, -eps, 1.0)
    if tag == "I":
        return HeatIsqGroupElement(sigma=math.exp(eps))
    if tag == "Iprime":
        return HeatIsqGroupElement(sigma=-1.0)
    raise KeyError(tag)


def _hisq_s(g: HeatIsqGroupElement, t):
    s = g.gamma * t + g.delta
    if jc.value_of(s) == 0:
        raise SingularHyperplaneError("gamma*t + delta = 0")
    return s


def hisq_multiplier(g: HeatIsqGroupElement, t, x):
    s = _hisq_s(g, t)
    return g.sigma * jc.abs_power(s, 0.5) * jc.exp(g.gamma * x * x / (4 * s))


def hisq_group_apply(g: HeatIsqGroupElement, p: Sequence) -> Tuple:
    """Image of ``(t, x, u)``."""
    t, x, u = p
    s = _hisq_s(g, t)
    return (g.alpha * t + g.beta) / s, x / s, hisq_multiplier(g, t, x) * u


def hisq_compose(g1: HeatIsqGroupElement, g2: HeatIsqGroupElement) -> HeatIsqGroupElement:
    """``g1 o g2``; the multiplier is a cocycle so ``sigma`` multiplies."""
    A = np.array([[g1.alpha, g1.beta], [g1.gamma, g1.delta]]) @ np.array([[g2.alpha, g2.beta], [g2.gamma, g2.delta]])
    return HeatIsqGroupElement(*(float(v) for v in A.ravel()), g1.sigma * g2.sigma)


def hisq_inverse(g: HeatIsqGroupElement) -> HeatIsqGroupElement:
    return HeatIsqGroupElement(g.delta, -g.beta, -g.gamma, g.alpha, 1 / g.sigma)


def _hisq_preimage(g: HeatIsqGroupElement, tt, xt):
    t = (g.delta * tt - g.beta) / (-g.gamma * tt + g.alpha)
    return t, xt * (g.gamma * t + g.delta)


def hisq_act_on_solution(g: HeatIsqGroupElement, s: Solution) -> Solution:
    def ev(tt, xt):
        t, x = _hisq_preimage(g, tt, xt)
        return hisq_multiplier(g, t, x) * s(t, x)

    def dom(tt, xt):
        if abs(-g.gamma * tt + g.alpha) < 1e-12:
            return False
        t, x = _hisq_preimage(g, tt, xt)
        return abs(g.gamma * t + g.delta) > 1e-12 and s.domain(t, x)

    return Solution(ev, dom, f"hisq*{s.label}", arity=2)


def hisq_exponential_gap(tag: str, p: Sequence[float], h: float = 1e-6) -> float:
    """Flow derivative at ``eps = 0`` against its closed-form generator."""
    V = heat_isq_basis()[tag]
    plus = hisq_group_apply(hisq_elementary(tag, h), (*p, 1.0))
    minus = hisq_group_apply(hisq_elementary(tag, -h), (*p, 1.0))
    deriv = np.array([(a - b) / (2 * h) for a, b in zip(plus, minus)])
    want = np.array([*(c.evaluate(p) for c in V.xi), V.eta.diff_jet((0, 0)).evaluate(p)])
    return float(np.max(np.abs(deriv - want)) / max(1.0, float(np.max(np.abs(want)))))


def subalgebra_closure() -> Dict[str, bool]:
    return {k: closure_check(s) for k, s in heat_isq_subalgebras().items()}


# ---------------------------------------------------------------------------
# plugin for the Kolmogorov catalog

Plugin = Callable[[Jet2, Jet2], Jet2]

FAMILIES = ("euler", "cylinder", "s12", "s13", "zero")


def family_solution(family: str, mu: float = DEFAULT_MU, **params) -> Solution:
    if family == "euler":
        return euler_family(mu, params.get("C1", 1.0), params.get("C2", 0.0))
    if family == "cylinder":
        return cylinder_family(mu, int(params.get("eps", 1)), params.get("C1", 1.0), params.get("C2", 0.0))
    if family in ("s12", "s13"):
        return whittaker_family(family, mu, params.get("nu", 1.0), params.get("C1", 1.0), params.get("C2", 0.0))
    if family == "zero":
        return Solution(lambda t, x: jc.as_jet(t) * 0.0, label="heatisq.zero", arity=2)
    raise KeyError(f"unknown heat-isq family {family!r}")


def theta_mu_plugin(mu: float = DEFAULT_MU, family: str = "euler", **params) -> Tuple[Plugin, Callable[[float, float], bool]]:
    """``(z1, z2) -> theta(z1, z2)`` with roles ``(t, x) -> (z1, z2)``, plus its domain."""
    sol = family_solution(family, mu, **params)
    return sol.evaluator, sol.domain
