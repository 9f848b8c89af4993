"""Essential point symmetry group of the Kolmogorov equation.

Elements are parameter tuples ``(alpha, beta, gamma, delta; lambda0..lambda3;
sigma)`` with ``alpha*delta - beta*gamma = 1``.  The point action is written
once and evaluated on floats or on :class:`~kolsym.jetcalc.Jet2` values, so
the same formulas drive point checks, solution transport and Jacobians.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple, Union

import numpy as np

from . import jetcalc as jc
from .jetcalc import Jet2, Solution
from .liealg import VectorField, kolmogorov_basis

REFERENCE_POINT = (1 / 7, 1 / 3, 1 / 11)


class SingularHyperplaneError(ValueError):
    """The point lies on ``gamma*t + delta = 0``."""


@dataclass(frozen=True)
class GroupElement:
    alpha: float = 1.0
    beta: float = 0.0
    gamma: float = 0.0
    delta: float = 1.0
    lambdas: Tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    sigma: float = 1.0

    def __post_init__(self) -> None:
        det = self.alpha * self.delta - self.beta * self.gamma
        if abs(det - 1) > 1e-12 * max(1.0, abs(self.alpha * self.delta), abs(self.beta * self.gamma)):
            raise ValueError(f"SL2 part must be unimodular, got determinant {det!r}")
        if self.sigma == 0:
            raise ValueError("sigma must be nonzero")
        object.__setattr__(self, "lambdas", tuple(float(v) for v in self.lambdas))

    @property
    def sl2(self) -> Tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def matrix(self) -> np.ndarray:
        return np.array([[self.alpha, self.beta], [self.gamma, self.delta]])

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "delta": self.delta,
            "lambda": list(self.lambdas), "sigma": self.sigma,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "GroupElement":
        return cls(float(d["alpha"]), float(d["beta"]), float(d["gamma"]), float(d["delta"]),
                   tuple(float(v) for v in d.get("lambda", (0, 0, 0, 0))), float(d.get("sigma", 1.0)))

    @classmethod
    def from_json(cls, text: str) -> "GroupElement":
        return cls.from_dict(json.loads(text))


IDENTITY = GroupElement()


# ---------------------------------------------------------------------------
# point action


def _hats(g: GroupElement, t, x, y):
    l0, l1, l2, l3 = g.lambdas
    xh = x + 3 * l3 * t * t + 2 * l2 * t + l1
    yh = y + l3 * t * t * t + l2 * t * t + l1 * t + l0
    return xh, yh


def multiplier(g: GroupElement, t, x, y):
    """The factor ``m`` in ``u~ = m(t, x, y) u``; floats or jets."""
    s = g.gamma * t + g.delta
    if jc.value_of(s) == 0:
        raise SingularHyperplaneError("gamma*t + delta = 0")
    l0, l1, l2, l3 = g.lambdas
    xh, yh = _hats(g, t, x, y)
    ga = g.gamma
    arg = (ga * xh * xh / s - 3 * ga * ga * xh * yh / (s * s) + 3 * ga ** 3 * yh * yh / (s * s * s)
           + 3 * l3 * (y - t * x) - l2 * x - (3 * l3 * l3 * t ** 3 + 3 * l3 * l2 * t * t + l2 * l2 * t))
    return g.sigma * s * s * jc.exp(arg)


def point_map(g: GroupElement, t, x, y):
    """``(t~, x~, y~)`` for floats or jets."""
    s = g.gamma * t + g.delta
    if jc.value_of(s) == 0:
        raise SingularHyperplaneError("gamma*t + delta = 0")
    xh, yh = _hats(g, t, x, y)
    tt = (g.alpha * t + g.beta) / s
    xt = xh / s - 3 * g.gamma * yh / (s * s)
    yt = yh / (s * s * s)
    return tt, xt, yt


def apply(g: GroupElement, p: Sequence) -> Tuple:
    """Image of ``(t, x, y, u)``."""
    t, x, y, u = p
    tt, xt, yt = point_map(g, t, x, y)
    return tt, xt, yt, multiplier(g, t, x, y) * u


# ---------------------------------------------------------------------------
# elementary elements


def elementary(tag: str, eps: float = 0.0) -> GroupElement:
    """One-parameter subgroups and discrete elements by tag."""
    e = float(eps)
    if tag == "identity":
        return IDENTITY
    if tag == "Pt":
        return GroupElement(1.0, e, 0.0, 1.0)
    if tag == "D":
        return GroupElement(math.exp(e), 0.0, 0.0, math.exp(-e))
    if tag == "K":
        return GroupElement(1.0, 0.0, -e, 1.0)
    if tag in ("P0", "P1", "P2", "P3"):
        lam = [0.0, 0.0, 0.0, 0.0]
        lam[int(tag[1])] = e
        return GroupElement(lambdas=tuple(lam))
    if tag == "I":
        return GroupElement(sigma=math.exp(e))
    if tag == "rotation":
        c, s = math.cos(e), math.sin(e)
        return GroupElement(c, -s, s, c)
    if tag == "J":
        return GroupElement(-1.0, 0.0, 0.0, -1.0)
    if tag == "Kprime":
        return GroupElement(0.0, -1.0, 1.0, 0.0)
    if tag == "Iprime":
        return GroupElement(sigma=-1.0)
    raise KeyError(f"unknown elementary tag {tag!r}")


ELEMENTARY_TAGS = ("Pt", "D", "K", "P3", "P2", "P1", "P0", "I", "J", "Kprime", "Iprime", "rotation")


def generator_of(tag: str) -> VectorField:
    """Vector field whose flow is ``elementary(tag, eps)``."""
    B = kolmogorov_basis()
    if tag == "rotation":
        return -(B["Pt"] + B["K"])
    return B[tag]


# ---------------------------------------------------------------------------
# composition and inverse by canonical-form matching


def _from_maps(A: np.ndarray, pmap: Callable, mmap: Callable) -> GroupElement:
    """Rebuild parameters from an SL2 matrix, a point map and a multiplier map.

    ``y~ s^3`` at ``x = y = 0`` is the cubic ``lambda3 t^3 + ... + lambda0``;
    ``sigma`` is the multiplier ratio at a reference point.
    """
    a, b, c, d = (float(v) for v in A.ravel())
    # Chebyshev nodes keep the cubic fit well conditioned; shift off the pole if needed
    nodes = np.cos((2 * np.arange(4) + 1) * np.pi / 8)
    shift = 0.0
    while min(abs(c * (t + shift) + d) for t in nodes) < 1e-2:
        shift += 0.37
    rows, rhs = [], []
    for t in nodes + shift:
        _, _, yt = pmap(t, 0.0, 0.0)
        s = c * t + d
        rows.append([1.0, t, t * t, t ** 3])
        rhs.append(yt * s ** 3)
    lam = np.linalg.solve(np.array(rows), np.array(rhs))
    trial = GroupElement(a, b, c, d, tuple(lam), 1.0)
    ref = REFERENCE_POINT
    if abs(c * ref[0] + d) < 1e-6:
        ref = (0.3, 1 / 3, 1 / 11)
    sigma = mmap(*ref) / multiplier(trial, *ref)
    return GroupElement(a, b, c, d, tuple(lam), sigma)


def compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Parameters of ``g1 o g2`` (``g2`` acts first)."""
    A = g1.matrix() @ g2.matrix()

    def pmap(t, x, y):
        return point_map(g1, *point_map(g2, t, x, y))

    def mmap(t, x, y):
        p = point_map(g2, t, x, y)
        return multiplier(g1, *p) * multiplier(g2, t, x, y)

    return _from_maps(A, pmap, mmap)


def _inverse_point(g: GroupElement, tt, xt, yt):
    """Preimage of ``(t~, x~, y~)``; valid for floats and jets."""
    a, b, c, d = g.sl2
    t = (d * tt - b) / (-c * tt + a)
    s = c * t + d
    yh = yt * s * s * s
    xh = (xt + 3 * c * yh / (s * s)) * s
    l0, l1, l2, l3 = g.lambdas
    x = xh - (3 * l3 * t * t + 2 * l2 * t + l1)
    y = yh - (l3 * t * t * t + l2 * t * t + l1 * t + l0)
    return t, x, y


def inverse(g: GroupElement) -> GroupElement:
    a, b, c, d = g.sl2
    A = np.array([[d, -b], [-c, a]])

    def pmap(t, x, y):
        return _inverse_point(g, t, x, y)

    def mmap(t, x, y):
        return 1.0 / multiplier(g, *_inverse_point(g, t, x, y))

    return _from_maps(A, pmap, mmap)


def max_pointwise_gap(g1: GroupElement, g2: GroupElement, points: Sequence[Sequence[float]]) -> float:
    """Largest relative gap between the actions of two elements on ``(t, x, y, u=1)``."""
    gap = 0.0
    for p in points:
        a = apply(g1, (*p, 1.0))
        b = apply(g2, (*p, 1.0))
        for u, v in zip(a, b):
            gap = max(gap, abs(u - v) / max(1.0, abs(v)))
    return gap


def compose_maps_gap(g1: GroupElement, g2: GroupElement, points: Sequence[Sequence[float]]) -> float:
    """Gap between ``apply(compose(g1, g2))`` and ``apply(g1) o apply(g2)``."""
    g = compose(g1, g2)
    gap = 0.0
    for p in points:
        direct = apply(g1, apply(g2, (*p, 1.0)))
        comp = apply(g, (*p, 1.0))
        for u, v in zip(comp, direct):
            gap = max(gap, abs(u - v) / max(1.0, abs(v)))
    return gap


# ---------------------------------------------------------------------------
# action on solutions


def act_on_solution(g: GroupElement, s: Solution) -> Solution:
    """Transport a solution: ``u~(p~) = m(p) u(p)`` with ``p = g^{-1}(p~)``."""

    def evaluator(tt, xt, yt):
        t, x, y = _inverse_point(g, tt, xt, yt)
        return multiplier(g, t, x, y) * s(t, x, y)

    def domain(tt, xt, yt):
        a, b, c, d = g.sl2
        if abs(-c * tt + a) < 1e-12:
            return False
        t, x, y = _inverse_point(g, tt, xt, yt)
        if abs(g.gamma * t + g.delta) < 1e-12:
            return False
        return s.domain(t, x, y)

    return Solution(evaluator, domain, f"g*{s.label}")


def constant_solution(c: float = 1.0) -> Solution:
    return Solution(lambda t, x, y: Jet2(float(c)), label="const")


def fundamental_from_constant(t0: float = 0.0, x0: float = 0.0, y0: float = 0.0,
                              literal_order: bool = False) -> GroupElement:
    """Element mapping ``u = 1`` to the fundamental solution with source ``(t0, x0, y0)``.

    Default order is ``I(ln(sqrt3/2pi)) o P0(y0) o Pt(t0) o P1(x0) o K'``.  With
    ``literal_order`` the Galilean boost follows the time shift instead, which
    moves the source to ``(t0, x0, y0 + x0*t0)``.
    """
    order = (("Pt", t0), ("P1", x0)) if literal_order else (("P1", x0), ("Pt", t0))
    g = elementary("Kprime")
    for tag, e in (*order, ("P0", y0), ("I", math.log(math.sqrt(3) / (2 * math.pi)))):
        g = compose(elementary(tag, e), g)
    return g


def fundamental_solution_value(t, x, y, t0: float = 0.0, x0: float = 0.0, y0: float = 0.0):
    """Closed-form fundamental solution; floats or jets."""
    T = t - t0
    X = x - x0
    Y = y - y0 - 0.5 * (x + x0) * T
    arg = -X * X / (4 * T) - 3 * Y * Y / (T * T * T)
    return math.sqrt(3) / (2 * math.pi) / (T * T) * jc.exp(arg)


# ---------------------------------------------------------------------------
# pushforwards


def _field_at(V: VectorField, p: Sequence[float]) -> Tuple[np.ndarray, float]:
    xi = np.array([c.evaluate(p) for c in V.xi])
    eta_coef = V.eta.diff_jet((0, 0, 0)).evaluate(p)
    return xi, eta_coef


def pushforward_at(g: GroupElement, V: VectorField, p: Sequence[float]) -> Tuple[Tuple[float, ...], np.ndarray, float]:
    """Image point ``q = g(p)`` and the components of ``g_* V`` at ``q`` (``eta`` divided by ``u``)."""
    if any(c.u_degree() > 0 for c in V.xi) or V.eta.u_degree() > 1:
        raise ValueError("pushforward expects fibre-linear fields")
    T, X, Y = jc.seed(*p)
    img = point_map(g, T, X, Y)
    m = multiplier(g, T, X, Y)
    xi, eta_coef = _field_at(V, p)
    J = np.array([[c.d(j) for j in range(3)] for c in img])
    xi_new = J @ xi
    grad_log_m = np.array([m.d(j) for j in range(3)]) / m.v
    eta_new = float(grad_log_m @ xi + eta_coef)
    q = tuple(c.v for c in img)
    return q, xi_new, eta_new


@dataclass
class PushforwardReport:
    passed: bool
    max_gap: float
    points: int

    def to_dict(self) -> dict:
        return {"passed": self.passed, "max_gap": self.max_gap, "points": self.points}


def pushforward_check(g: GroupElement, V: VectorField, expected: VectorField, points: Sequence[Sequence[float]] = (),
                      tol: float = 1e-7) -> PushforwardReport:
    """Compare ``g_* V`` with ``expected`` at generic points (25 by default)."""
    if not points:
        points = generic_points(25, seed_value=7)
    gap = 0.0
    for p in points:
        q, xi, eta = pushforward_at(g, V, p)
        exi, eeta = _field_at(expected, q)
        scale = max(1.0, float(np.max(np.abs(exi))), abs(eeta))
        gap = max(gap, float(np.max(np.abs(xi - exi))) / scale, abs(eta - eeta) / scale)
    return PushforwardReport(gap <= tol, gap, len(points))


def generic_points(n: int, seed_value: int = 0, box=((0.3, 1.2), (-1.0, 1.0), (-1.0, 1.0))) -> List[Tuple[float, ...]]:
    pts = jc.quasi_random_points(box, n, seed_value)
    return [tuple(float(v) for v in row) for row in pts]


def pushforward_table(eps: float) -> List[Tuple[str, str, Dict[str, float]]]:
    """Non-identity pushforwards of basis fields by elementary elements, as ``(tag, source, combination)``."""
    e = eps
    return [
        ("Pt", "D", {"D": 1, "Pt": -2 * e}),
        ("Pt", "K", {"K": 1, "D": -e, "Pt": e * e}),
        ("Pt", "P3", {"P3": 1, "P2": -3 * e, "P1": 3 * e * e, "P0": -e ** 3}),
        ("Pt", "P2", {"P2": 1, "P1": -2 * e, "P0": e * e}),
        ("Pt", "P1", {"P1": 1, "P0": -e}),
        ("K", "D", {"D": 1, "K": 2 * e}),
        ("K", "Pt", {"Pt": 1, "D": e, "K": e * e}),
        ("K", "P2", {"P2": 1, "P3": e}),
        ("K", "P1", {"P1": 1, "P2": 2 * e, "P3": e * e}),
        ("K", "P0", {"P0": 1, "P1": 3 * e, "P2": 3 * e * e, "P3": e ** 3}),
        ("D", "Pt", {"Pt": math.exp(2 * e)}),
        ("D", "K", {"K": math.exp(-2 * e)}),
        ("D", "P3", {"P3": math.exp(-3 * e)}),
        ("D", "P2", {"P2": math.exp(-e)}),
        ("D", "P1", {"P1": math.exp(e)}),
        ("D", "P0", {"P0": math.exp(3 * e)}),
        ("P3", "Pt", {"Pt": 1, "P2": 3 * e}),
        ("P3", "D", {"D": 1, "P3": 3 * e}),
        ("P3", "P0", {"P0": 1, "I": 3 * e}),
        ("P0", "D", {"D": 1, "P0": -3 * e}),
        ("P0", "K", {"K": 1, "P1": -3 * e}),
        ("P0", "P3", {"P3": 1, "I": -3 * e}),
        ("P2", "Pt", {"Pt": 1, "P1": 2 * e, "I": -e * e}),
        ("P2", "D", {"D": 1, "P2": e}),
        ("P2", "K", {"K": 1, "P3": -e}),
        ("P2", "P1", {"P1": 1, "I": -e}),
        ("P1", "Pt", {"Pt": 1, "P0": e}),
        ("P1", "D", {"D": 1, "P1": -e}),
        ("P1", "K", {"K": 1, "P2": -2 * e, "I": -e * e}),
        ("P1", "P2", {"P2": 1, "I": e}),
        ("J", "P3", {"P3": -1}),
        ("J", "P2", {"P2": -1}),
        ("J", "P1", {"P1": -1}),
        ("J", "P0", {"P0": -1}),
        ("Kprime", "Pt", {"K": 1}),
        ("Kprime", "D", {"D": -1}),
        ("Kprime", "K", {"Pt": 1}),
        ("Kprime", "P3", {"P0": 1}),
        ("Kprime", "P2", {"P1": -1}),
        ("Kprime", "P1", {"P2": 1}),
        ("Kprime", "P0", {"P3": -1}),
    ]


def float_combination(coefs: Dict[str, float]) -> VectorField:
    """Linear combination of basis fields with float weights, stored exactly via ``Fraction``."""
    from fractions import Fraction

    B = kolmogorov_basis()
    out = None
    for k, c in coefs.items():
        term = B[k].scale(Fraction(c))
        out = term if out is None else out + term
    return out


def verify_pushforward_table(eps: float = 0.4, points: Sequence[Sequence[float]] = (), tol: float = 1e-7):
    """Run every identity of the pushforward table; returns ``(name, report)`` pairs."""
    B = kolmogorov_basis()
    out = []
    for tag, src, comb in pushforward_table(eps):
        g = elementary(tag, eps)
        rep = pushforward_check(g, B[src], float_combination(comb), points, tol)
        out.append((f"{tag}({eps})_*{src}", rep))
    return out


def exponential_gap(tag: str, p: Sequence[float], h: float = 1e-6) -> float:
    """Central-difference derivative of the flow at ``eps = 0`` against the generator, relative gap."""
    V = generator_of(tag)
    plus = apply(elementary(tag, h), (*p, 1.0))
    minus = apply(elementary(tag, -h), (*p, 1.0))
    deriv = np.array([(a - b) / (2 * h) for a, b in zip(plus, minus)])
    xi, eta = _field_at(V, p)
    want = np.array([*xi, eta])
    return float(np.max(np.abs(deriv - want)) / max(1.0, float(np.max(np.abs(want)))))
