"""Codimension-one and codimension-two Lie reductions of the Kolmogorov equation.

Each :class:`ReductionSpec` bundles the invariant variables, the multiplier of
the ansatz ``u = M * w(z)`` (or ``u = M * phi(omega)``), the reduced equation as
a residual functional and the exact reduced solutions shipped for it.  Sign
branches (``eps' = sgn t``, ``delta``, ``eps``) are separate instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import jetcalc as jc
from . import specfun as sf
from .catalog import HEAT_PLUGINS, theta_mu
from .jetcalc import Jet2, Solution

Evaluator = Callable[..., Jet2]
Box = Tuple[Tuple[float, float], ...]


def _terms(*vals) -> Tuple[float, float]:
    """Signed residual and absolute scale of a sum of terms."""
    return float(sum(vals)), float(sum(abs(v) for v in vals))


@dataclass(frozen=True)
class ReducedSolution:
    name: str
    evaluator: Evaluator
    domain: Callable[..., bool] = lambda *z: True

    def __call__(self, *z) -> Jet2:
        return self.evaluator(*z)


@dataclass
class ReductionSpec:
    row: str
    instance: str
    zmap: Callable[..., Tuple]
    multiplier: Callable[..., Jet2]
    residual_fn: Callable[[Jet2, Sequence[float]], Tuple[float, float]]
    arity: int
    box: Box
    solutions: Dict[str, ReducedSolution] = field(default_factory=dict)
    domain: Callable[..., bool] = lambda t, x, y: True
    params: Dict[str, float] = field(default_factory=dict)

    def residual_terms(self, w: Jet2, z: Sequence[float]) -> Tuple[float, float]:
        return self.residual_fn(w, z)

    def to_dict(self) -> dict:
        return {"row": self.row, "instance": self.instance, "arity": self.arity, "box": [list(b) for b in self.box],
                "params": self.params, "solutions": sorted(self.solutions)}


# ---------------------------------------------------------------------------
# ansatz and residuals


def ansatz_eval(spec: ReductionSpec, w: Evaluator, w_domain: Optional[Callable[..., bool]] = None) -> Solution:
    """``u = M(t, x, y) * w(z(t, x, y))`` with exact jet composition."""
    if isinstance(w, ReducedSolution):
        w_domain = w_domain or w.domain

    def ev(t, x, y):
        z = spec.zmap(t, x, y)
        return spec.multiplier(t, x, y) * w(*z)

    def dom(t, x, y):
        if not spec.domain(t, x, y):
            return False
        if w_domain is None:
            return True
        z = tuple(jc.value_of(c) for c in spec.zmap(t, x, y))
        return w_domain(*z)

    return Solution(ev, dom, f"ansatz[{spec.instance}]")


def _seed_z(z: Sequence[float]) -> Tuple[Jet2, ...]:
    return jc.seed(*z, *(0.0,) * (3 - len(z)))[: len(z)]


def reduced_residual(spec: ReductionSpec, w: Evaluator, zpoint: Sequence[float]) -> float:
    """Signed residual of the reduced equation at ``zpoint``."""
    jet = w(*_seed_z(zpoint))
    return spec.residual_terms(jet, tuple(zpoint))[0]


def reduced_residual_rel(spec: ReductionSpec, w: Evaluator, zpoint: Sequence[float]) -> float:
    jet = w(*_seed_z(zpoint))
    r, scale = spec.residual_terms(jet, tuple(zpoint))
    return abs(r) / max(1.0, scale)


def argument_perturbation(w: Evaluator, scale: float = 1.01, bump: float = 0.01) -> Evaluator:
    """``w(scale * z) * (1 + bump * z_1^2)``; the bump breaks scale-invariant solutions."""
    def ev(*z):
        first = z[0]
        return w(*(scale * c for c in z)) * (1 + bump * first * first)
    return ev


@dataclass
class ConsistencyReport:
    instance: str
    solution: str
    points: int
    max_reduced: float
    max_kolmogorov: float
    max_perturbed: float
    tol: float

    @property
    def implication_holds(self) -> bool:
        return self.max_reduced > self.tol or self.max_kolmogorov <= self.tol

    @property
    def negative_control_fires(self) -> bool:
        return self.max_perturbed > 1e-3

    @property
    def passed(self) -> bool:
        return self.max_reduced <= self.tol and self.max_kolmogorov <= self.tol and self.negative_control_fires

    def to_dict(self) -> dict:
        return {"instance": self.instance, "solution": self.solution, "points": self.points,
                "max_reduced": self.max_reduced, "max_kolmogorov": self.max_kolmogorov,
                "max_perturbed": self.max_perturbed, "tol": self.tol, "passed": self.passed}


def consistency_check(spec: ReductionSpec, w: ReducedSolution, n: int = 200, seed_value: int = 42,
                      tol: float = 1e-8) -> ConsistencyReport:
    """Reduced residual, Kolmogorov residual of the ansatz and a perturbed negative control on one point set."""
    u = ansatz_eval(spec, w)
    rep = jc.sample_residuals("kolmogorov", u, spec.box, n=n, seed_value=seed_value, tol_rel=tol)
    cand = jc.quasi_random_points(spec.box, n * 4, seed_value)
    pts = [tuple(float(c) for c in p) for p in cand if u.domain(*p)][:n]
    max_red = 0.0
    for p in pts:
        z = tuple(jc.value_of(c) for c in spec.zmap(*p))
        max_red = max(max_red, reduced_residual_rel(spec, w, z))
    pert = ansatz_eval(spec, argument_perturbation(w), lambda *z: True)
    neg = jc.sample_residuals("kolmogorov", pert, spec.box, n=n, seed_value=seed_value, tol_rel=tol,
                              domain=u.domain)
    return ConsistencyReport(spec.instance, w.name, rep.points, max_red, rep.max_rel, neg.max_rel, tol)


# ---------------------------------------------------------------------------
# exact power series solutions (Cauchy-Kovalevskaya in z2)

Poly = Dict[int, Fraction]


def _padd(a: Poly, b: Poly, c: Fraction = Fraction(1)) -> Poly:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + c * v
        if out[k] == 0:
            del out[k]
    return out


def _pmul_mono(a: Poly, coef: Fraction, deg: int) -> Poly:
    return {k + deg: v * coef for k, v in a.items()} if coef else {}


def _pdiff(a: Poly) -> Poly:
    return {k - 1: v * k for k, v in a.items() if k > 0}


@dataclass(frozen=True)
class SeriesTerm:
    """``coef * z1^i * z2^j * d_{z1}^a d_{z2}^b w`` with ``a, b`` in ``{0, 1}``."""

    coef: Fraction
    i: int
    j: int
    a: int
    b: int


class SeriesSolution:
    """``w = e^{lam z1} sum_k P_k(z1) z2^k`` solving ``w_22 = sum of SeriesTerm``.

    The data ``P_0``, ``P_1`` are polynomials in ``z1``; the recursion on the
    ``z2``-Taylor coefficients is carried out exactly in rational arithmetic.
    """

    def __init__(self, terms: Sequence[SeriesTerm], lam: Fraction, p0: Poly, p1: Poly, order: int = 60):
        self.terms = tuple(terms)
        self.lam = Fraction(lam)
        P: List[Poly] = [dict(p0), dict(p1)]
        for k in range(order - 1):
            acc: Poly = {}
            for term in self.terms:
                m = k - term.j
                if m < 0:
                    continue
                if term.b == 1:
                    if m + 1 >= len(P):
                        continue
                    base = {e: c * (m + 1) for e, c in P[m + 1].items()}
                else:
                    base = P[m]
                if term.a == 1:
                    base = _padd(_pdiff(base), base, self.lam)
                acc = _padd(acc, _pmul_mono(base, term.coef, term.i))
            P.append({e: c / ((k + 2) * (k + 1)) for e, c in acc.items()})
        self.coefficients = P
        deg = max((max(p) if p else 0) for p in P) + 1
        C = np.zeros((deg, len(P)))
        for k, p in enumerate(P):
            for e, c in p.items():
                C[e, k] = float(c)
        self._C = C
        self._dz1 = np.array([[e * C[e, k] for k in range(len(P))] for e in range(deg)])

    def tail(self, z1: float, z2: float) -> float:
        """Size of the last retained term, relative to the sum."""
        v = np.polynomial.polynomial.polyval(z1, self._C[:, -1]) * z2 ** (len(self.coefficients) - 1)
        return abs(v) / max(abs(self._value_parts(z1, z2)[0]), 1e-300)

    def _value_parts(self, z1: float, z2: float):
        C = self._C
        ne, nk = C.shape
        e = np.arange(ne)
        k = np.arange(nk)
        p1 = z1 ** e
        d1 = np.concatenate(([0.0], e[1:] * z1 ** (e[1:] - 1)))
        dd1 = np.concatenate(([0.0, 0.0], e[2:] * (e[2:] - 1) * z1 ** (e[2:] - 2)))
        p2 = z2 ** k
        d2 = np.concatenate(([0.0], k[1:] * z2 ** (k[1:] - 1)))
        dd2 = np.concatenate(([0.0, 0.0], k[2:] * (k[2:] - 1) * z2 ** (k[2:] - 2)))
        S = p1 @ C @ p2
        S1 = d1 @ C @ p2
        S2 = p1 @ C @ d2
        S11 = dd1 @ C @ p2
        S12 = d1 @ C @ d2
        S22 = p1 @ C @ dd2
        return S, S1, S2, S11, S12, S22

    def __call__(self, z1, z2) -> Jet2:
        a, b = jc.value_of(z1), jc.value_of(z2)
        S, S1, S2, S11, S12, S22 = self._value_parts(a, b)
        lam = float(self.lam)
        E = math.exp(lam * a)
        f0 = E * S
        f1 = (E * (S1 + lam * S), E * S2)
        f2 = ((E * (S11 + 2 * lam * S1 + lam * lam * S), E * (S12 + lam * S2)),
              (E * (S12 + lam * S2), E * S22))
        return jc.compose(f0, f1, f2, (z1, z2))


def series_row_1_1(lam: Fraction = Fraction(1), order: int = 60) -> SeriesSolution:
    """``w_22 = z2 w_1 + 3 z1 w`` with ``w(z1, 0) = e^{lam z1}``, ``w_2(z1, 0) = 0``."""
    terms = (SeriesTerm(Fraction(1), 0, 1, 1, 0), SeriesTerm(Fraction(3), 1, 0, 0, 0))
    return SeriesSolution(terms, lam, {0: Fraction(1)}, {}, order)


def series_row_1_3(eps_p: int, nu: Fraction, lam: Fraction = Fraction(1, 2), order: int = 60) -> SeriesSolution:
    """``w_22 = (z2 - 3/2 eps' z1) w_1 - eps'/2 z2 w_2 + (nu - 2) eps'/2 w``."""
    e = Fraction(eps_p)
    terms = (SeriesTerm(Fraction(1), 0, 1, 1, 0), SeriesTerm(-Fraction(3, 2) * e, 1, 0, 1, 0),
             SeriesTerm(-e / 2, 0, 1, 0, 1), SeriesTerm((Fraction(nu) - 2) * e / 2, 0, 0, 0, 0))
    return SeriesSolution(terms, lam, {0: Fraction(1)}, {1: Fraction(1)}, order)


def series_row_1_4(mu: Fraction, lam: Fraction = Fraction(1, 2), order: int = 60) -> SeriesSolution:
    """``w_22 = z2 w_1 - 3 z1 w_2 - (mu + z2^2) w``."""
    terms = (SeriesTerm(Fraction(1), 0, 1, 1, 0), SeriesTerm(Fraction(-3), 1, 0, 0, 1),
             SeriesTerm(-Fraction(mu), 0, 0, 0, 0), SeriesTerm(Fraction(-1), 0, 2, 0, 0))
    return SeriesSolution(terms, lam, {0: Fraction(1)}, {0: Fraction(1, 2)}, order)


# ---------------------------------------------------------------------------
# reduced equations


def _res_1_1(w, z):
    z1, z2 = z[0], z[1]
    return _terms(z2 * w.d(0), -w.d2(1, 1), 3 * z1 * w.v)


def _res_1_2(delta):
    def res(w, z):
        return _terms(z[1] * w.d(0), -w.d2(1, 1), delta * w.v)
    return res


def _res_1_3(eps_p, nu):
    def res(w, z):
        z1, z2 = z[0], z[1]
        return _terms((2 * z2 - 3 * eps_p * z1) * w.d(0), -2 * w.d2(1, 1), -eps_p * z2 * w.d(1),
                      (nu - 2) * eps_p * w.v)
    return res


def _res_1_4(mu):
    def res(w, z):
        z1, z2 = z[0], z[1]
        return _terms(z2 * w.d(0), -3 * z1 * w.d(1), -w.d2(1, 1), -(mu + z2 * z2) * w.v)
    return res


def _res_heat(w, z):
    return _terms(w.d(0), -w.d2(1, 1))


def _res_2_1(mu):
    def res(p, z):
        om = z[0]
        return _terms(9 * om * p.d2(0, 0), (om + 6) * p.d(0), -(mu - 2) * p.v)
    return res


def _res_2_2(delta):
    def res(p, z):
        return _terms(p.d2(0, 0), -delta * p.v)
    return res


def _res_2_3(p, z):
    return _terms(p.d2(0, 0), -z[0] * p.v)


def _res_2_4(mu, eps_p):
    def res(p, z):
        om = z[0]
        return _terms(2 * p.d2(0, 0), -eps_p * (mu - 2) * p.v, 3 * eps_p * om * p.d(0))
    return res


def _res_2_5(mu, eps_p):
    def res(p, z):
        om = z[0]
        return _terms(2 * p.d2(0, 0), -eps_p * (mu - 2) * p.v, eps_p * om * p.d(0))
    return res


def _res_2_6(p, z):
    return _terms(p.d(0))


def _res_2_7(p, z):
    return _terms(2 * z[0] * p.d(0), p.v)


def _res_2_8(p, z):
    om = z[0]
    return _terms((2 * om ** 3 - 1) * p.d(0), 3 * om * om * p.v)


# ---------------------------------------------------------------------------
# rows


def _one(t, x, y):
    return jc.as_jet(t) * 0.0 + 1.0


def psi(t, x, y, mu):
    """Exponent of the row-1.4 multiplier."""
    r = t * t + 1
    return (3 * t ** 3 * y * y + t * (2 * x * r - 3 * t * y) ** 2) / (4 * r ** 3) + mu * jc.atan(t)


def _heat_solutions(keys=("kernel", "exp+", "trig")) -> Dict[str, ReducedSolution]:
    out = {}
    for k in keys:
        pl = HEAT_PLUGINS[k]
        out[f"heat.{k}"] = ReducedSolution(f"heat.{k}", pl, pl.domain)
    return out


POS: Box = ((0.5, 2.0), (0.5, 2.0), (0.5, 2.0))
NEG: Box = ((-2.0, -0.5), (0.5, 2.0), (0.5, 2.0))


def _row_1_1() -> List[ReductionSpec]:
    def zmap(t, x, y):
        return y - t ** 4 / 4, x - t ** 3

    def mult(t, x, y):
        return jc.exp(0.3 * t ** 5 - 1.5 * t * t * x + 3 * t * y)

    sols = {"series": ReducedSolution("series", series_row_1_1())}
    return [ReductionSpec("1.1", "1.1", zmap, mult, _res_1_1, 2, ((0.5, 1.0), (0.5, 1.5), (0.5, 1.5)), sols)]


def _row_1_2() -> List[ReductionSpec]:
    out = []
    for delta in (-1, 0, 1):
        def mult(t, x, y, d=delta):
            return jc.exp(d * t) + 0.0 * x

        def airy(z1, z2, d=delta):
            return jc.exp(z1) * sf.lift_airy("Ai", jc.as_jet(z2 + d))

        sols = {"airy": ReducedSolution("airy", airy)}
        if delta == 0:
            th = theta_mu("euler")

            def via_theta(z1, z2, th=th):
                sg = jc.sign(z2)
                return jc.abs_power(z2, -0.25) * th(sg * 9 * z1 / 4, jc.abs_power(z2, 1.5))

            def dom(z1, z2, th=th):
                return z2 != 0 and th.domain(math.copysign(9 * z1 / 4, z2), abs(z2) ** 1.5)

            sols["theta_mu.euler"] = ReducedSolution("theta_mu.euler", via_theta, dom)
        out.append(ReductionSpec("1.2", f"1.2[delta={delta}]", lambda t, x, y: (y, x), mult, _res_1_2(delta), 2,
                                 POS, sols, params={"delta": delta}))
    return out


def _row_1_3(nu: float = 1.0) -> List[ReductionSpec]:
    out = []
    for ep in (1, -1):
        def zmap(t, x, y, ep=ep):
            at = ep * t
            return y * jc.power(at, -1.5), x * jc.power(at, -0.5)

        def mult(t, x, y, ep=ep, nu=nu):
            return jc.power(ep * t, nu / 2 - 1)

        # t > 0: z2 e^{-z2^2/4} M(nu/2, 3/2, z2^2/4); t < 0 by Kummer's transformation
        a = nu / 2 if ep > 0 else 1.5 - nu / 2

        def kummer(z1, z2, ep=ep, a=a):
            w = jc.as_jet(z2 * z2 / 4)
            f = sf.lift_kummer("M", a, 1.5, w)
            if ep > 0:
                f = f * jc.exp(-w)
            return z2 * f + 0.0 * z1

        sols = {"kummer": ReducedSolution("kummer", kummer),
                "series": ReducedSolution("series", series_row_1_3(ep, Fraction(nu).limit_denominator(1000)))}
        box = POS if ep > 0 else NEG
        spec = ReductionSpec("1.3", f"1.3[eps'={ep:+d}]", zmap, mult, _res_1_3(ep, nu), 2, box, sols,
                             lambda t, x, y: t != 0, {"nu": nu, "eps'": ep})
        out.append(spec)
    return out


def gauss_spec_1_3() -> ReductionSpec:
    """Row 1.3 at ``nu = -2``, ``t > 0``, where the fundamental solution is invariant."""
    spec = _row_1_3(-2.0)[0]
    spec.solutions = {"gauss": ReducedSolution("gauss", lambda z1, z2: jc.exp(-z2 * z2 + 3 * z1 * z2 - 3 * z1 * z1))}
    spec.instance = "1.3[eps'=+1,nu=-2]"
    return spec


def _row_1_4(mu: float = 0.5) -> List[ReductionSpec]:
    def zmap(t, x, y):
        r = t * t + 1
        d = jc.power(r, 1.5)
        return y / d, (r * x - 3 * t * y) / d

    def mult(t, x, y, mu=mu):
        return jc.exp(-psi(t, x, y, mu)) / (t * t + 1)

    sols = {"series": ReducedSolution("series", series_row_1_4(Fraction(mu).limit_denominator(1000)))}
    return [ReductionSpec("1.4", "1.4", zmap, mult, _res_1_4(mu), 2, ((-1.0, 1.0), (-1.0, 1.0), (-1.0, 1.0)),
                          sols, params={"mu": mu})]


def _row_1_5() -> List[ReductionSpec]:
    out = []
    for eps in (1, -1):
        def zmap(t, x, y, e=eps):
            return t ** 3 / 3 + 2 * e * t - 1 / t, 2 * y - (t + e / t) * x

        def mult(t, x, y):
            return jc.abs_power(t, -0.5) * jc.exp(-x * x / (4 * t))

        box = ((1.2, 2.0), (0.5, 2.0), (0.5, 2.0)) if eps > 0 else ((-2.0, -0.5), (0.5, 2.0), (0.5, 2.0))
        out.append(ReductionSpec("1.5", f"1.5[eps={eps:+d}]", zmap, mult, _res_heat, 2, box, _heat_solutions(),
                                 lambda t, x, y: t != 0, {"eps": eps}))
    return out


def _row_1_6() -> List[ReductionSpec]:
    return [ReductionSpec("1.6", "1.6", lambda t, x, y: (t ** 3 / 3, y - t * x), _one, _res_heat, 2, POS,
                          _heat_solutions())]


def _row_1_7() -> List[ReductionSpec]:
    return [ReductionSpec("1.7", "1.7", lambda t, x, y: (t, x + 0.0 * y), _one, _res_heat, 2, POS,
                          _heat_solutions())]


def _row_2_1(mu: float = 1.5) -> List[ReductionSpec]:
    def zmap(t, x, y):
        return (x * x * x / y + 0.0 * t,)

    def mult(t, x, y, mu=mu):
        return jc.abs_power(y, mu - 2)

    def kummer(kind):
        def ev(om):
            w = jc.as_jet(om / 9)
            return jc.abs_power(om, 1 / 3) * jc.exp(-w) * sf.lift_kummer(kind, mu - 1, 4 / 3, w)
        return ev

    sols = {"M": ReducedSolution("M", kummer("M"), lambda om: om != 0 and abs(om) <= 360),
            "U": ReducedSolution("U", kummer("U"), lambda om: 0 < om <= 360)}
    return [ReductionSpec("2.1", "2.1", zmap, mult, _res_2_1(mu), 1, POS, sols, lambda t, x, y: y != 0,
                          {"mu": mu})]


def _row_2_2() -> List[ReductionSpec]:
    out = []
    for delta in (1, 0, -1):
        if delta == 1:
            sols = {"exp": ReducedSolution("exp", lambda om: jc.exp(om) + 0.5 * jc.exp(-om))}
        elif delta == 0:
            sols = {"linear": ReducedSolution("linear", lambda om: 1.0 * om + 0.5)}
        else:
            sols = {"trig": ReducedSolution("trig", lambda om: jc.sin(om) + 0.5 * jc.cos(om))}

        def mult(t, x, y, d=delta):
            return jc.exp(d * t) + 0.0 * x

        out.append(ReductionSpec("2.2", f"2.2[delta={delta}]", lambda t, x, y: (x + 0.0 * t,), mult,
                                 _res_2_2(delta), 1, POS, sols, params={"delta": delta}))
    return out


def _row_2_3() -> List[ReductionSpec]:
    sols = {"Ai": ReducedSolution("Ai", lambda om: sf.lift_airy("Ai", jc.as_jet(om))),
            "Bi": ReducedSolution("Bi", lambda om: sf.lift_airy("Bi", jc.as_jet(om)))}
    return [ReductionSpec("2.3", "2.3", lambda t, x, y: (x + 0.0 * t,), lambda t, x, y: jc.exp(y) + 0.0 * t,
                          _res_2_3, 1, ((0.5, 2.0), (-3.0, 3.0), (0.5, 2.0)), sols)]


def _row_kummer(row: str, mu: float = 1.0) -> List[ReductionSpec]:
    out = []
    if row == "2.4":
        a, c, power, res = mu / 6 + 2 / 3, 0.75, mu / 2 - 1, _res_2_4
    else:
        a, c, power, res = mu / 2, 0.25, mu / 2 - 1, _res_2_5
    for ep in (1, -1):
        if row == "2.4":
            def zmap(t, x, y, ep=ep):
                return ((y - t * x) * jc.power(ep * t, -1.5),)
        else:
            def zmap(t, x, y, ep=ep):
                return (x * jc.power(ep * t, -0.5) + 0.0 * y,)

        def mult(t, x, y, ep=ep):
            return jc.power(ep * t, power)

        a_eff = a if ep > 0 else 1.5 - a

        def sol(kind, ep=ep, a_eff=a_eff):
            def ev(om):
                w = jc.as_jet(c * om * om)
                f = sf.lift_kummer(kind, a_eff, 1.5, w)
                if ep > 0:
                    f = f * jc.exp(-w)
                return om * f
            return ev

        sols = {"M": ReducedSolution("M", sol("M"), lambda om: c * om * om <= 40),
                "U": ReducedSolution("U", sol("U"), lambda om: 0 < c * om * om <= 40)}
        box = POS if ep > 0 else NEG
        out.append(ReductionSpec(row, f"{row}[eps'={ep:+d}]", zmap, mult, res(mu, ep), 1, box, sols,
                                 lambda t, x, y: t != 0, {"mu": mu, "eps'": ep}))
    return out


def _row_2_6() -> List[ReductionSpec]:
    sols = {"const": ReducedSolution("const", lambda om: jc.as_jet(om) * 0.0 + 1.0)}
    return [ReductionSpec("2.6", "2.6", lambda t, x, y: (t + 0.0 * x,), _one, _res_2_6, 1, POS, sols)]


def _row_2_7() -> List[ReductionSpec]:
    sols = {"power": ReducedSolution("power", lambda om: jc.power(om, -0.5), lambda om: om > 0)}
    return [ReductionSpec("2.7", "2.7", lambda t, x, y: (t + 0.0 * x,),
                          lambda t, x, y: jc.exp(-x * x / (4 * t)), _res_2_7, 1,
                          ((0.5, 2.0), (-2.0, 2.0), (0.5, 2.0)), sols, lambda t, x, y: t > 0)]


def _row_2_8() -> List[ReductionSpec]:
    sols = {"power": ReducedSolution("power", lambda om: jc.power(2 * om ** 3 - 1, -0.5), lambda om: 2 * om ** 3 > 1)}

    def mult(t, x, y):
        return jc.exp(-1.5 * (y - t * x) ** 2 / (2 * t ** 3 - 1))

    return [ReductionSpec("2.8", "2.8", lambda t, x, y: (t + 0.0 * x,), mult, _res_2_8, 1,
                          ((0.9, 2.0), (0.5, 2.0), (0.5, 2.0)), sols, lambda t, x, y: 2 * t ** 3 > 1)]


ROWS = ("1.1", "1.2", "1.3", "1.4", "1.5", "1.6", "1.7", "2.1", "2.2", "2.3", "2.4", "2.5", "2.6", "2.7", "2.8")


def specs(row: Optional[str] = None) -> List[ReductionSpec]:
    """All reduction instances, or those of one reduction row."""
    builders = {
        "1.1": _row_1_1, "1.2": _row_1_2, "1.3": _row_1_3, "1.4": _row_1_4, "1.5": _row_1_5,
        "1.6": _row_1_6, "1.7": _row_1_7, "2.1": _row_2_1, "2.2": _row_2_2, "2.3": _row_2_3,
        "2.4": lambda: _row_kummer("2.4", 1.0), "2.5": lambda: _row_kummer("2.5", 1.5),
        "2.6": _row_2_6, "2.7": _row_2_7, "2.8": _row_2_8,
    }
    if row is not None:
        return builders[row]()
    return [s for r in ROWS for s in builders[r]()]


def get_spec(instance: str) -> ReductionSpec:
    for s in specs(instance.split("[")[0]):
        if s.instance == instance:
            return s
    raise KeyError(instance)


def check_row(row: str, n: int = 200, tol: float = 1e-8) -> List[ConsistencyReport]:
    return [consistency_check(s, w, n=n, tol=tol) for s in specs(row) for w in s.solutions.values()]


# ---------------------------------------------------------------------------
# mapped forms: reduced equations 1.1-1.4 as heat equations with potentials


@dataclass
class MappedForm:
    """Point map ``(z1, z2, w) -> (z~1, z~2, w~)`` onto ``w~_1 = w~_22 + V w~`` on one ``sgn`` branch.

    ``inverse`` recovers ``(z1, z2)`` from ``(z~1, z~2)``; ``factor`` is ``w~ / w``.
    """

    source: str
    branch: int
    forward: Callable[..., Tuple]
    inverse: Callable[..., Tuple]
    factor: Callable[..., Jet2]
    potential: Callable[..., Jet2]
    params: Dict[str, float] = field(default_factory=dict)

    def transform(self, w: Evaluator) -> Evaluator:
        def ev(s1, s2):
            z1, z2 = self.inverse(s1, s2)
            return self.factor(z1, z2) * w(z1, z2)
        return ev

    def residual_terms(self, wt: Jet2, s: Sequence[float]) -> Tuple[float, float]:
        V = jc.value_of(self.potential(s[0], s[1]))
        return _terms(wt.d(0), -wt.d2(1, 1), -V * wt.v)


def mapped_form(source: str, branch: int = 1, delta: int = 0, eps_p: int = 1, nu: float = 1.0,
                mu: float = 0.5) -> MappedForm:
    """Mapped form of reduction ``1.1``, ``1.2``, ``1.3`` or ``1.4`` on the branch ``eps~ = branch``."""
    et = branch

    def fwd_std(z1, z2):
        return 9 * et * z1 / 4, jc.abs_power(z2, 1.5)

    def inv_std(s1, s2):
        return 4 * et * s1 / 9, et * jc.power(s2, 2 / 3)

    def fac_std(z1, z2):
        return jc.abs_power(z2, 0.25)

    if source == "1.1":
        def V(s1, s2):
            return -(16 / 3 * et * s1 * jc.power(s2, -2 / 3) - 1.25 * jc.power(s2, -2)) / 9
        return MappedForm("1.1", et, fwd_std, inv_std, fac_std, V)
    if source == "1.2":
        def V(s1, s2, d=delta):
            return -(4 * d * jc.power(s2, -2 / 3) - 1.25 * jc.power(s2, -2)) / 9 + 0.0 * s1
        return MappedForm("1.2", et, fwd_std, inv_std, fac_std, V, {"delta": delta})
    if source == "1.3":
        ep = eps_p

        def fwd(z1, z2):
            return 9 * et * z1 / 4, jc.abs_power(z2 - 1.5 * ep * z1, 1.5)

        def inv(s1, s2):
            z1 = 4 * et * s1 / 9
            return z1, 1.5 * ep * z1 + et * jc.power(s2, 2 / 3)

        def fac(z1, z2):
            return jc.abs_power(2 * z2 - 3 * ep * z1, 0.25) * jc.exp(z2 * (4 * ep * z2 - 9 * z1) / 8)

        def V(s1, s2):
            q = jc.power(s2, 2 / 3)
            return (16 * s1 * s1 - 40 * (q + 2 / 3 * ep * s1) ** 2 + 20 * jc.power(s2, -4 / 3)
                    - 32 * ep * nu) * jc.power(s2, -2 / 3) / 144
        return MappedForm("1.3", et, fwd, inv, fac, V, {"eps'": ep, "nu": nu})
    if source == "1.4":
        def fac(z1, z2):
            return jc.abs_power(z2, 0.25) * jc.exp(1.5 * z1 * z2)

        def V(s1, s2):
            return (1.25 * jc.power(s2, -2) + 10 * jc.power(s2, 2 / 3)
                    + 4 * (mu - 4 / 9 * s1 * s1) * jc.power(s2, -2 / 3)) / 9
        return MappedForm("1.4", et, fwd_std, inv_std, fac, V, {"mu": mu})
    raise KeyError(source)


def mapped_potential_mu(branch: int = 1) -> float:
    """Coefficient of ``z~2^-2`` in the mapped form of ``1.2`` at ``delta = 0``."""
    f = mapped_form("1.2", branch, delta=0)
    s2 = 1.7
    return jc.value_of(f.potential(0.3, s2)) * s2 * s2


def mapped_check(form: MappedForm, w: Evaluator, box: Box, n: int = 60, seed_value: int = 11,
                 tol: float = 1e-8) -> jc.ResidualReport:
    """Residual of the transformed reduced solution against the heat-with-potential equation."""
    wt = form.transform(w)
    spec = _MappedEq(form)
    return jc.sample_residuals(("reduced", spec), Solution(wt, arity=2), box, n=n, seed_value=seed_value, tol_rel=tol,
                               domain=lambda s1, s2: s2 > 0)


@dataclass
class _MappedEq:
    form: MappedForm
    arity: int = 2

    def residual_terms(self, jet: Jet2, p: Sequence[float]) -> Tuple[float, float]:
        return self.form.residual_terms(jet, p)


def mapped_solutions(source: str, branch: int, **params) -> Tuple[MappedForm, Evaluator, Box]:
    """A mapped form with a shipped reduced solution and a box in the tilde variables."""
    if source == "1.1":
        form = mapped_form("1.1", branch)
        w = series_row_1_1()
        box = ((-1.5, 1.5), (0.2, 1.5))
    elif source == "1.2":
        delta = params.get("delta", 1)
        form = mapped_form("1.2", branch, delta=delta)

        def w(z1, z2, d=delta):
            return jc.exp(z1) * sf.lift_airy("Ai", jc.as_jet(z2 + d))
        box = ((-2.0, 2.0), (0.2, 2.5))
    elif source == "1.3":
        ep = params.get("eps_p", 1)
        nu = params.get("nu", 1.0)
        form = mapped_form("1.3", branch, eps_p=ep, nu=nu)
        w = series_row_1_3(ep, Fraction(nu).limit_denominator(1000))
        box = ((-1.0, 1.0), (0.2, 1.2))
    elif source == "1.4":
        mu = params.get("mu", 0.5)
        form = mapped_form("1.4", branch, mu=mu)
        w = series_row_1_4(Fraction(mu).limit_denominator(1000))
        box = ((-1.5, 1.5), (0.2, 1.2))
    else:
        raise KeyError(source)
    return form, w, box


# ---------------------------------------------------------------------------
# hidden symmetries


HIDDEN_ROWS = ("1.1", "1.2d", "1.2_0", "1.3", "1.4", "1.5", "1.6", "1.7")


def hidden_symmetry_dimensions() -> Dict[str, Tuple[int, int]]:
    """``(dim a_i, dim N(s_i) - 1)`` per codimension-one row."""
    from .liealg import hidden_algebra, normalizer_expectations

    exp = normalizer_expectations()
    out = {}
    for r in HIDDEN_ROWS:
        _, norm = exp[r]
        out[r] = (len(hidden_algebra(r)), len(norm) - 1)
    return out
