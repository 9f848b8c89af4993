"""Registry of exact solution families of ``u_t + x u_y = u_xx``.

Families are instantiated into :class:`~kolsym.jetcalc.Solution` objects.
Families parameterized by an arbitrary heat-equation solution take
:class:`HeatPlugin` values; since the second-order jets of ``u`` may involve
up to fourth ``z2``-derivatives of a plugin, plugins provide closed forms for
every ``z2``-derivative (each of which is again a heat solution).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from . import heatisq
from . import jetcalc as jc
from . import specfun as sf
from .group import fundamental_solution_value
from .jetcalc import Jet2, Solution

Evaluator = Callable[..., Jet2]
Box = Tuple[Tuple[float, float], ...]

DEFAULT_BOX: Box = ((0.5, 2.0), (0.5, 2.0), (0.5, 2.0))


class CatalogError(ValueError):
    pass


class SchemaError(CatalogError):
    pass


class SmokeTestError(CatalogError):
    """A freshly instantiated family failed its residual smoke test."""


# ---------------------------------------------------------------------------
# heat plugins


@dataclass(frozen=True)
class HeatPlugin:
    """Solution of ``theta_1 = theta_22`` with closed-form ``z2``-derivatives of any order."""

    id: str
    derivative: Callable[[int], Evaluator]
    domain: Callable[[float, float], bool] = lambda z1, z2: True

    def __call__(self, z1, z2) -> Jet2:
        return self.derivative(0)(z1, z2)

    def d2(self, k: int) -> Evaluator:
        return self.derivative(k)

    def as_solution(self, k: int = 0) -> Solution:
        return Solution(self.derivative(k), self.domain, f"heat.{self.id}[d2^{k}]", arity=2)


def _hermite(k: int, s):
    h0, h1 = 1.0, 2 * s
    if k == 0:
        return jc.as_jet(s) * 0.0 + 1.0
    for n in range(1, k):
        h0, h1 = h1, 2 * s * h1 - 2 * n * h0
    return h1


def _kernel_derivative(k: int) -> Evaluator:
    def ev(z1, z2):
        r = jc.sqrt(z1)
        s = z2 / (2 * r)
        return (-1) ** k * _hermite(k, s) * jc.exp(-s * s) / (r * (2 * r) ** k)
    return ev


def _heat_polynomial(n: int) -> Evaluator:
    def ev(z1, z2):
        z1, z2 = jc.as_jet(z1), jc.as_jet(z2)
        out = z1 * 0.0
        for j in range(n // 2 + 1):
            c = math.factorial(n) / (math.factorial(j) * math.factorial(n - 2 * j))
            out = out + c * jc.power(z1, j) * jc.power(z2, n - 2 * j)
        return out
    return ev


def _polynomial_derivative(n: int) -> Callable[[int], Evaluator]:
    def deriv(k: int) -> Evaluator:
        if k > n:
            return lambda z1, z2: jc.as_jet(z1) * 0.0
        c = math.factorial(n) / math.factorial(n - k)
        base = _heat_polynomial(n - k)
        return lambda z1, z2: c * base(z1, z2)
    return deriv


def _exp_derivative(sign: int) -> Callable[[int], Evaluator]:
    def deriv(k: int) -> Evaluator:
        return lambda z1, z2: sign ** k * jc.exp(z1 + sign * z2)
    return deriv


def _trig_derivative(k: int) -> Evaluator:
    def ev(z1, z2):
        phase = k % 4
        f = (jc.sin, jc.cos, jc.sin, jc.cos)[phase](z2)
        sgn = (1, 1, -1, -1)[phase]
        return sgn * jc.exp(-z1) * f
    return ev


HEAT_PLUGINS: Dict[str, HeatPlugin] = {
    "kernel": HeatPlugin("kernel", _kernel_derivative, lambda z1, z2: z1 > 0),
    "poly0": HeatPlugin("poly0", _polynomial_derivative(0)),
    "poly1": HeatPlugin("poly1", _polynomial_derivative(1)),
    "poly2": HeatPlugin("poly2", _polynomial_derivative(2)),
    "poly3": HeatPlugin("poly3", _polynomial_derivative(3)),
    "exp+": HeatPlugin("exp+", _exp_derivative(1)),
    "exp-": HeatPlugin("exp-", _exp_derivative(-1)),
    "trig": HeatPlugin("trig", _trig_derivative),
    "zero": HeatPlugin("zero", lambda k: (lambda z1, z2: jc.as_jet(z1) * 0.0)),
}


@dataclass(frozen=True)
class ThetaMuPlugin:
    """Solution of ``theta_1 = theta_22 + mu z2^-2 theta`` built from a heat-isq family."""

    id: str
    evaluator: Evaluator
    domain: Callable[[float, float], bool]
    mu: float = heatisq.DEFAULT_MU

    def __call__(self, z1, z2) -> Jet2:
        return self.evaluator(z1, z2)


def theta_mu(family: str = "euler", mu: float = heatisq.DEFAULT_MU, **params) -> ThetaMuPlugin:
    ev, dom = heatisq.theta_mu_plugin(mu, family, **params)
    return ThetaMuPlugin(family, ev, dom, mu)


Plugin = Union[HeatPlugin, ThetaMuPlugin]


def resolve_plugin(slot: str, value: Union[str, Plugin]) -> Plugin:
    if isinstance(value, (HeatPlugin, ThetaMuPlugin)):
        return value
    if slot == "theta_mu":
        return theta_mu(value)
    try:
        return HEAT_PLUGINS[value]
    except KeyError:
        raise SchemaError(f"unknown heat plugin {value!r}") from None


# ---------------------------------------------------------------------------
# family registry


@dataclass(frozen=True)
class ParamSpec:
    name: str
    default: float
    lo: float = -math.inf
    hi: float = math.inf
    choices: Tuple[float, ...] = ()

    def check(self, v: float) -> float:
        v = float(v)
        if self.choices and v not in self.choices:
            raise SchemaError(f"{self.name}={v} not in {self.choices}")
        if not (self.lo <= v <= self.hi):
            raise SchemaError(f"{self.name}={v} outside [{self.lo}, {self.hi}]")
        return v

    def to_dict(self) -> dict:
        d = {"name": self.name, "default": self.default}
        if self.choices:
            d["choices"] = list(self.choices)
        else:
            d["range"] = [self.lo, self.hi]
        return d


Builder = Callable[[Dict[str, float], Dict[str, Plugin]], Solution]


@dataclass(frozen=True)
class SolutionFamily:
    id: str
    anchor: str
    builder: Builder
    params: Tuple[ParamSpec, ...] = ()
    slots: Tuple[Tuple[str, str], ...] = ()
    box: Union[Box, Callable[[Dict[str, float]], Box]] = DEFAULT_BOX
    equation: Union[str, Callable[[Dict[str, float]], tuple]] = "kolmogorov"
    aliases: Tuple[str, ...] = ()

    def defaults(self) -> Dict[str, float]:
        return {p.name: p.default for p in self.params}

    def box_for(self, params: Mapping[str, float]) -> Box:
        return self.box(dict(params)) if callable(self.box) else self.box

    def equation_for(self, params: Mapping[str, float]):
        return self.equation(dict(params)) if callable(self.equation) else self.equation

    def manifest(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "params": [p.to_dict() for p in self.params],
            "plugins": [{"slot": s, "default": d} for s, d in self.slots],
            "box": [list(b) for b in self.box_for(self.defaults())],
            "aliases": list(self.aliases),
        }


_REGISTRY: Dict[str, SolutionFamily] = {}
_ALIASES: Dict[str, str] = {}


def register(fam: SolutionFamily) -> SolutionFamily:
    if fam.id in _REGISTRY:
        raise CatalogError(f"duplicate family {fam.id}")
    _REGISTRY[fam.id] = fam
    for a in fam.aliases:
        _ALIASES[a] = fam.id
    return fam


def get(fid: str) -> SolutionFamily:
    fid = _ALIASES.get(fid, fid)
    try:
        return _REGISTRY[fid]
    except KeyError:
        raise CatalogError(f"unknown family {fid!r}") from None


def ids() -> List[str]:
    return sorted(_REGISTRY)


def list_families() -> List[dict]:
    """Deterministic manifest, sorted by id."""
    return [_REGISTRY[k].manifest() for k in ids()]


def manifest_json() -> str:
    return json.dumps({"families": list_families(), "heat_plugins": sorted(HEAT_PLUGINS)}, indent=2, sort_keys=True)


def instantiate(fid: str, params: Optional[Mapping[str, float]] = None,
                plugins: Optional[Mapping[str, Union[str, Plugin]]] = None, smoke: bool = True) -> Solution:
    fam = get(fid)
    specs = {p.name: p for p in fam.params}
    vals = fam.defaults()
    for k, v in (params or {}).items():
        if k not in specs:
            raise SchemaError(f"{fam.id} has no parameter {k!r}")
        vals[k] = specs[k].check(v)
    slots = dict(fam.slots)
    chosen: Dict[str, Plugin] = {}
    for k in (plugins or {}):
        if k not in slots:
            raise SchemaError(f"{fam.id} has no plugin slot {k!r}")
    for slot, default in fam.slots:
        chosen[slot] = resolve_plugin(slot, (plugins or {}).get(slot, default))
    sol = fam.builder(vals, chosen)
    if smoke:
        smoke_test(fam, sol, vals)
    return sol


def smoke_test(fam: SolutionFamily, sol: Solution, vals: Mapping[str, float], n: int = 20,
               tol_rel: float = 1e-8) -> jc.ResidualReport:
    rep = jc.sample_residuals(fam.equation_for(vals), sol, fam.box_for(vals), n=n, seed_value=7, tol_rel=tol_rel)
    if not rep.passed:
        raise SmokeTestError(f"{fam.id} failed its smoke test: max relative residual {rep.max_rel:.3e}")
    return rep


def superpose(terms: Sequence[Tuple[float, Solution]]) -> Solution:
    """Linear combination of solutions of the same linear equation."""
    if not terms:
        raise CatalogError("superpose needs at least one term")
    arity = terms[0][1].arity
    if any(s.arity != arity for _, s in terms):
        raise CatalogError("superposed solutions must share their arity")
    terms = list(terms)

    def ev(*c):
        out = None
        for coef, s in terms:
            v = coef * s(*c)
            out = v if out is None else out + v
        return out

    def dom(*p):
        return all(s.domain(*p) for _, s in terms)

    label = " + ".join(f"{c:g}*{s.label}" for c, s in terms)
    return Solution(ev, dom, label, arity=arity)


def perturbed(sol: Solution, strength: float = 0.1) -> Solution:
    """Negative control: ``u * exp(strength * x^2)``, which is not a solution."""
    return Solution(lambda *c: sol(*c) * jc.exp(strength * c[1] * c[1]), sol.domain, f"perturbed({sol.label})",
                    arity=sol.arity)


# ---------------------------------------------------------------------------
# family builders


def _fundamental(p, _):
    t0, x0, y0 = p["t0"], p["x0"], p["y0"]
    return Solution(lambda t, x, y: fundamental_solution_value(t, x, y, t0, x0, y0),
                    lambda t, x, y: t > t0, "fundamental")


def _both_domains(plugin: Plugin, zmap: Callable, extra: Callable = lambda *p: True):
    def dom(t, x, y):
        if not extra(t, x, y):
            return False
        z1, z2 = zmap(t, x, y)
        return plugin.domain(z1, z2)
    return dom


def _theta12(p, pl):
    th = pl["theta_mu"]

    def zmap(t, x, y):
        sg = jc.sign(x)
        return sg * 9 * y / 4, jc.abs_power(x, 1.5)

    def ev(t, x, y):
        z1, z2 = zmap(t, x, y)
        return jc.abs_power(x, -0.25) * th(z1, z2)

    return Solution(ev, _both_domains(th, zmap, lambda t, x, y: x != 0), "s5.theta12")


def _heat15_z(eps):
    def zmap(t, x, y):
        return t * t * t / 3 + 2 * eps * t - 1 / t, 2 * y - (t + eps / t) * x
    return zmap


def _heat15(p, pl):
    th, eps = pl["theta"], p["eps"]
    zmap = _heat15_z(eps)

    def ev(t, x, y):
        z1, z2 = zmap(t, x, y)
        return jc.abs_power(t, -0.5) * jc.exp(-x * x / (4 * t)) * th(z1, z2)

    return Solution(ev, _both_domains(th, zmap, lambda t, x, y: t != 0), f"s5.heat15[eps={eps:g}]")


def _heat16_z(t, x, y):
    return t * t * t / 3, y - t * x


def _heat16(p, pl):
    th = pl["theta"]
    return Solution(lambda t, x, y: th(*_heat16_z(t, x, y)), _both_domains(th, _heat16_z), "s5.heat16")


def _heat17_z(t, x, y):
    return t, x


def _heat17(p, pl):
    th = pl["theta"]
    return Solution(lambda t, x, y: th(t, x), _both_domains(th, _heat17_z), "s5.heat17")


def _kummer21(p, _):
    kappa, C1, C2 = p["kappa"], p["C1"], p["C2"]
    b = 4 / 3

    def ev(t, x, y):
        w = x * x * x / (9 * y)
        f = jc.as_jet(w) * 0.0
        if C1:
            f = f + C1 * sf.lift_kummer("M", kappa, b, jc.as_jet(w))
        if C2:
            f = f + C2 * sf.lift_kummer("U", kappa, b, jc.as_jet(w))
        return x * jc.abs_power(y, kappa - 4 / 3) * jc.exp(-w) * f

    def dom(t, x, y):
        if y == 0:
            return False
        w = x ** 3 / (9 * y)
        return abs(w) <= 40 and (C2 == 0 or w > 0)

    return Solution(ev, dom, f"s6.kummer21[kappa={kappa:g}]")


def _exp22(p, _):
    C1, C2 = p["C1"], p["C2"]
    return Solution(lambda t, x, y: C1 * jc.exp(t + x) + C2 * jc.exp(t - x), label="s6.exp22")


def _lin22(p, _):
    C1, C2 = p["C1"], p["C2"]
    return Solution(lambda t, x, y: C1 * x + C2 + 0.0 * t, label="s6.lin22")


def _trig22(p, _):
    C1, C2 = p["C1"], p["C2"]
    return Solution(lambda t, x, y: jc.exp(-t) * (C1 * jc.sin(x) + C2 * jc.cos(x)), label="s6.trig22")


def _airy23(p, _):
    C1, C2 = p["C1"], p["C2"]

    def ev(t, x, y):
        xj = jc.as_jet(x)
        return jc.exp(y) * (C1 * sf.lift_airy("Ai", xj) + C2 * sf.lift_airy("Bi", xj)) + 0.0 * t

    return Solution(ev, label="s6.airy23")


def _kummer_branch(kind: str):
    """Families 24 (``kind='24'``) and 25 (``kind='25'``) on one sign branch of ``t``."""

    def build(p, _):
        mu, C1, C2, br = p["mu"], p["C1"], p["C2"], p["branch"]
        if kind == "24":
            a, power = mu / 6 + 2 / 3, (mu - 5) / 2

            def lin(t, x, y):
                return y - t * x

            def omega(t, x, y, at):
                return 0.75 * (y - t * x) ** 2 / (at * at * at)
        else:
            a, power = mu / 2, (mu - 3) / 2

            def lin(t, x, y):
                return x + 0.0 * t

            def omega(t, x, y, at):
                return 0.25 * x * x / at

        # for t < 0, Kummer's transformation turns e^{w} M(a, 3/2, -w) into M(3/2 - a, 3/2, w)
        a_eff = a if br > 0 else 1.5 - a

        def ev(t, x, y):
            at = br * t
            w = jc.as_jet(omega(t, x, y, at))
            f = w * 0.0
            if C1:
                f = f + C1 * sf.lift_kummer("M", a_eff, 1.5, w)
            if C2:
                f = f + C2 * sf.lift_kummer("U", a_eff, 1.5, w)
            if br > 0:
                f = f * jc.exp(-w)
            return jc.power(at, power) * lin(t, x, y) * f

        def dom(t, x, y):
            if t * br <= 0:
                return False
            w = jc.value_of(omega(t, x, y, abs(t)))
            return w <= 40 and (C2 == 0 or w > 0)

        return Solution(ev, dom, f"s6.kummer{kind}[branch={br:+g}]")

    return build


def _kummer_box(p):
    return ((0.5, 2.0), (0.5, 2.0), (0.5, 2.0)) if p["branch"] > 0 else ((-2.0, -0.5), (0.5, 2.0), (0.5, 2.0))


def _gauss7(p, _):
    C0 = p["C0"]
    return Solution(lambda t, x, y: C0 * jc.power(t, -0.5) * jc.exp(-x * x / (4 * t)) + 0.0 * y,
                    lambda t, x, y: t > 0, "s6.gauss7")


def _gauss3(p, _):
    C0 = p["C0"]

    def ev(t, x, y):
        q = 2 * t * t * t - 1
        return C0 * jc.power(q, -0.5) * jc.exp(-1.5 * (y - t * x) ** 2 / q)

    return Solution(ev, lambda t, x, y: 2 * t ** 3 > 1, "s6.gauss3")


def _const(p, _):
    C0 = p["C0"]
    return Solution(lambda t, x, y: jc.as_jet(t) * 0.0 + C0, label="s6.const")


def _p2sq(p, pl):
    th1, th0, eps = pl["theta1"], pl["theta0"], p["eps"]
    zmap = _heat15_z(eps)

    def ev(t, x, y):
        z1, z2 = zmap(t, x, y)
        inner = 0.5 * x / t * th1(z1, z2) - (t - eps / t) * th1.d2(1)(z1, z2) + th0(z1, z2)
        return jc.abs_power(t, -0.5) * jc.exp(-x * x / (4 * t)) * inner

    def dom(t, x, y):
        if t == 0:
            return False
        z1, z2 = zmap(t, x, y)
        return th1.domain(z1, z2) and th0.domain(z1, z2)

    return Solution(ev, dom, f"s8.p2sq[eps={eps:g}]")


def _p1sq(p, pl):
    th1, th0 = pl["theta1"], pl["theta0"]

    def ev(t, x, y):
        z1, z2 = _heat16_z(t, x, y)
        return x * th1(z1, z2) - t * t * th1.d2(1)(z1, z2) + th0(z1, z2)

    def dom(t, x, y):
        z1, z2 = _heat16_z(t, x, y)
        return th1.domain(z1, z2) and th0.domain(z1, z2)

    return Solution(ev, dom, "s8.p1sq")


def _p0sq(p, pl):
    th1, th0 = pl["theta1"], pl["theta0"]

    def ev(t, x, y):
        return y * th1.d2(2)(t, x) + 0.25 * x * x * th1.d2(1)(t, x) - 0.25 * x * th1(t, x) + th0(t, x)

    def dom(t, x, y):
        return th1.domain(t, x) and th0.domain(t, x)

    return Solution(ev, dom, "s8.p0sq")


def _heatisq_family(name: str):
    def build(p, _):
        mu = p["mu"]
        if name == "euler":
            return heatisq.euler_family(mu, p["C1"], p["C2"])
        if name == "cylinder":
            return heatisq.cylinder_family(mu, int(p["eps"]), p["C1"], p["C2"])
        return heatisq.whittaker_family(name, mu, p["nu"], p["C1"], p["C2"])
    return build


def _heatisq_eq(p):
    return heatisq.equation_for(p["mu"])


def _heatisq_s12_box(p):
    return ((0.5, 2.0), (0.3, 3.0)) if p["branch"] > 0 else ((-2.0, -0.5), (0.3, 3.0))


# ---------------------------------------------------------------------------
# registration

_C = (ParamSpec("C1", 1.0), ParamSpec("C2", 0.5))
_EPS = ParamSpec("eps", 1.0, choices=(-1.0, 1.0))
_MU = ParamSpec("mu", heatisq.DEFAULT_MU, -10.0, 10.0)
_BRANCH = ParamSpec("branch", 1.0, choices=(-1.0, 1.0))

register(SolutionFamily(
    "fundamental", "fundamental solution (Kolmogorov kernel)", _fundamental,
    (ParamSpec("t0", 0.0), ParamSpec("x0", 0.0), ParamSpec("y0", 0.0)),
    box=lambda p: ((p["t0"] + 0.5, p["t0"] + 2.0), (p["x0"] - 1.0, p["x0"] + 1.0),
                   (p["y0"] - 1.0, p["y0"] + 1.0))))
register(SolutionFamily("s5.theta12", "codim-1 reduction 1.2^0 via heat-isq theta^mu", _theta12,
                        slots=(("theta_mu", "euler"),)))
register(SolutionFamily(
    "s5.heat15", "codim-1 reduction 1.5", _heat15, (_EPS,), (("theta", "exp+"),),
    box=((0.5, 2.0), (0.5, 2.0), (0.5, 2.0))))
register(SolutionFamily("s5.heat16", "codim-1 reduction 1.6", _heat16, slots=(("theta", "kernel"),)))
register(SolutionFamily("s5.heat17", "codim-1 reduction 1.7", _heat17, slots=(("theta", "kernel"),)))
register(SolutionFamily(
    "s6.kummer21", "codim-2 reduction 2.1", _kummer21, (ParamSpec("kappa", 0.5, -5.0, 5.0), *_C),
    aliases=("s5.kummer21",)))
register(SolutionFamily("s6.exp22", "codim-2 reduction 2.2, delta=1", _exp22, _C))
register(SolutionFamily("s6.lin22", "codim-2 reduction 2.2, delta=0", _lin22, _C))
register(SolutionFamily("s6.trig22", "codim-2 reduction 2.2, delta=-1", _trig22, _C))
register(SolutionFamily("s6.airy23", "codim-2 reduction 2.3", _airy23, _C,
                        box=((0.5, 2.0), (-3.0, 3.0), (0.5, 2.0))))
for _kind, _anchor in (("24", "codim-2 reduction 2.4"), ("25", "codim-2 reduction 2.5")):
    register(SolutionFamily(f"s6.kummer{_kind}", _anchor, _kummer_branch(_kind),
                            (ParamSpec("mu", 0.5, -10.0, 10.0), *_C, _BRANCH), box=_kummer_box))
register(SolutionFamily("s6.gauss7", "codim-2 reduction 2.7", _gauss7, (ParamSpec("C0", 1.0),),
                        box=((0.5, 2.0), (-2.0, 2.0), (0.5, 2.0))))
register(SolutionFamily("s6.gauss3", "codim-2 reduction 2.8", _gauss3, (ParamSpec("C0", 1.0),),
                        box=((0.9, 2.0), (0.5, 2.0), (0.5, 2.0))))
register(SolutionFamily("s6.const", "codim-2 reduction 2.6", _const, (ParamSpec("C0", 1.0),)))
register(SolutionFamily("s8.p2sq", "generalized reduction (P2 + eps P0)^2 u = 0", _p2sq, (_EPS,),
                        (("theta1", "exp+"), ("theta0", "trig"))))
register(SolutionFamily("s8.p1sq", "generalized reduction (P1)^2 u = 0", _p1sq,
                        slots=(("theta1", "kernel"), ("theta0", "poly2"))))
register(SolutionFamily("s8.p0sq", "generalized reduction (P0)^2 u = 0", _p0sq,
                        slots=(("theta1", "kernel"), ("theta0", "exp-"))))
register(SolutionFamily("heatisq.euler", "heat-isq stationary solutions", _heatisq_family("euler"),
                        (_MU, *_C), box=((-1.0, 1.0), (0.3, 3.0)), equation=_heatisq_eq))
register(SolutionFamily("heatisq.cylinder", "heat-isq <Pt + eps I>-invariant solutions",
                        _heatisq_family("cylinder"), (_MU, _EPS, *_C),
                        box=heatisq.CYLINDER_BOX, equation=_heatisq_eq))
register(SolutionFamily("heatisq.s12", "heat-isq <D + nu I>-invariant solutions", _heatisq_family("s12"),
                        (_MU, ParamSpec("nu", 1.0, 0.0, 5.0), *_C, _BRANCH),
                        box=_heatisq_s12_box, equation=_heatisq_eq))
register(SolutionFamily("heatisq.s13", "heat-isq <Pt + K + 2 nu I>-invariant solutions",
                        _heatisq_family("s13"), (_MU, ParamSpec("nu", 0.5, -5.0, 5.0), *_C),
                        box=((-1.0, 1.0), (0.3, 2.5)), equation=_heatisq_eq))


# ---------------------------------------------------------------------------
# fundamental-solution normalization


def normalization_integral(gap: float, n: int = 24, x0: float = 0.0, y0: float = 0.0) -> float:
    """``int int F dx dy`` at time gap ``gap`` by Gauss-Hermite quadrature.

    The exponent of ``F`` is the quadratic form ``v^T M v`` in
    ``v = (x - x0, y - y0 - x0 * gap)``; rotating to the eigenbasis of ``M``
    makes each axis a Gauss-Hermite integral.
    """
    T = float(gap)
    # -(a^2/(4T)) - 3 (b - a T/2)^2 / T^3
    M = np.array([[1 / (4 * T) + 3 / (4 * T), -3 / (2 * T * T)],
                  [-3 / (2 * T * T), 3 / T ** 3]])
    lam, R = np.linalg.eigh(M)
    nodes, weights = np.polynomial.hermite.hermgauss(n)
    jac = 1 / math.sqrt(lam[0] * lam[1])
    total = 0.0
    for w1, a1 in zip(nodes, weights):
        for w2, a2 in zip(nodes, weights):
            v = R @ np.array([w1 / math.sqrt(lam[0]), w2 / math.sqrt(lam[1])])
            x = v[0] + x0
            y = v[1] + y0 + x0 * T
            f = fundamental_solution_value(T, x, y, 0.0, x0, y0)
            total += a1 * a2 * f * math.exp(w1 * w1 + w2 * w2)
    return total * jac
