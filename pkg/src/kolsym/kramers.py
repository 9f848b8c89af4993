"""Kramers equations with eight-dimensional essential algebras.

``u_t + x u_y = gamma u_xx + gamma (x + c gamma y) u_x + gamma u`` with
``c = -3/4`` (variant ``k34``) or ``c = 3/16`` (variant ``k316``) is mapped to the
Kolmogorov equation by an explicit point transformation ``Phi``.  Solutions are
generated by pulling Kolmogorov solutions back through ``Phi``; the essential
algebras are given as numeric, jet-capable vector fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from . import group as grp
from . import jetcalc as jc
from .jetcalc import Jet2, Solution
from .liealg import KOLMOGOROV_LABELS, KOLMOGOROV_RELATIONS

VARIANTS = ("k34", "k316")
BOX: Tuple[Tuple[float, float], ...] = ((-0.5, 0.5), (0.5, 2.0), (0.5, 2.0))
SQRT2 = math.sqrt(2.0)


class BranchError(ValueError):
    """The inverse transformation needs ``t~ > 0``."""


@dataclass(frozen=True)
class KramersVariant:
    name: str
    gamma: float

    def __post_init__(self):
        if self.name not in VARIANTS:
            raise KeyError(self.name)
        if self.gamma == 0:
            raise ValueError("gamma must be nonzero")

    @property
    def force(self) -> float:
        """``k`` in ``F(y) = k y``."""
        return jc.kramers_force(self.name, self.gamma) * self.gamma ** 2

    @property
    def equation(self) -> Tuple[str, float]:
        return ("kramers34" if self.name == "k34" else "kramers316", self.gamma)


def _variant(v) -> KramersVariant:
    return v if isinstance(v, KramersVariant) else KramersVariant(*v)


# ---------------------------------------------------------------------------
# the point transformation


def log_multiplier(v: KramersVariant, t, x, y):
    """``log(u~ / u)`` on the Kramers side."""
    g = v.gamma
    if v.name == "k34":
        return -(3 * g * y + 2 * x) ** 2 / 16 - 1.5 * g * t
    return -g * t + 0.0 * x


def point_forward(v: KramersVariant, t, x, y):
    g = v.gamma
    if v.name == "k34":
        return jc.exp(g * t), jc.exp(g * t / 2) * (1.5 * g * y + x), g * jc.exp(1.5 * g * t) * y
    return (jc.exp(g * t / 2), jc.exp(g * t / 4) * (0.75 * g * y + x) / SQRT2,
            g * jc.exp(0.75 * g * t) * y / (2 * SQRT2))


def point_inverse(v: KramersVariant, tt, xt, yt):
    if jc.value_of(tt) <= 0:
        raise BranchError("inverse transformation needs t~ > 0")
    g = v.gamma
    if v.name == "k34":
        t = jc.log(tt) / g
        y = yt * jc.exp(-1.5 * g * t) / g
        x = xt * jc.exp(-g * t / 2) - 1.5 * g * y
        return t, x, y
    t = 2 * jc.log(tt) / g
    y = 2 * SQRT2 * yt * jc.exp(-0.75 * g * t) / g
    x = SQRT2 * xt * jc.exp(-g * t / 4) - 0.75 * g * y
    return t, x, y


def phi_map(variant, direction: str, p: Sequence[float]) -> Tuple[float, float, float, float]:
    """``Phi`` (``direction='forward'``, Kramers to Kolmogorov) or its inverse on ``(t, x, y, u)``."""
    v = _variant(variant)
    if direction == "forward":
        t, x, y, u = p
        tt, xt, yt = point_forward(v, t, x, y)
        return tt, xt, yt, jc.exp(log_multiplier(v, t, x, y)) * u
    if direction == "inverse":
        tt, xt, yt, ut = p
        t, x, y = point_inverse(v, tt, xt, yt)
        return t, x, y, jc.exp(-log_multiplier(v, t, x, y)) * ut
    raise KeyError(direction)


def round_trip_gap(variant, p: Sequence[float]) -> float:
    q = phi_map(variant, "inverse", phi_map(variant, "forward", p))
    return max(abs(a - b) for a, b in zip(p, q))


def kramers_solution_from(variant, f: Solution, label: str = "") -> Solution:
    """Pullback ``u = (u/u~) f(Phi(t, x, y))`` of a Kolmogorov solution ``f``."""
    v = _variant(variant)

    def ev(t, x, y):
        tt, xt, yt = point_forward(v, t, x, y)
        return jc.exp(-log_multiplier(v, t, x, y)) * f(tt, xt, yt)

    def dom(t, x, y):
        return f.domain(*(jc.value_of(c) for c in point_forward(v, t, x, y)))

    return Solution(ev, dom, label or f"{v.name}[gamma={v.gamma:g}]<-{f.label}")


def pullback_residuals(variant, f: Solution, n: int = 60, seed_value: int = 42, tol_rel: float = 1e-8,
                       box=BOX) -> jc.ResidualReport:
    """Residual report of the pullback of ``f`` on ``box``.

    The image of ``box`` may meet the domain of ``f`` only in a thin slab, so
    oversampling grows until ``n`` admissible points are found (the best partial
    report is kept if 256x is not enough); raises
    :class:`~kolsym.jetcalc.DomainTooThinError` when the overlap stays below 1%.
    """
    v = _variant(variant)
    u = kramers_solution_from(v, f)
    best = None
    for over in (4, 16, 64, 256):
        try:
            rep = jc.sample_residuals(v.equation, u, box, n=n, seed_value=seed_value, tol_rel=tol_rel,
                                      oversample=over)
        except jc.DomainTooThinError:
            continue
        if rep.points >= n:
            return rep
        best = rep
    if best is not None:
        return best
    raise jc.DomainTooThinError(f"{u.label}: pullback domain misses the sample box")


# ---------------------------------------------------------------------------
# numeric vector fields


@dataclass(frozen=True)
class NumericField:
    """``tau d_t + xi d_x + eta d_y + phi u d_u`` with jet-capable coefficient functions of ``(t, x, y)``."""

    label: str
    coeffs: Callable[..., Tuple]

    def at(self, t, x, y) -> Tuple:
        return self.coeffs(t, x, y)

    def values(self, p: Sequence[float]) -> np.ndarray:
        return np.array([jc.value_of(c) for c in self.coeffs(*p)], dtype=float)


def bracket_at(a: NumericField, b: NumericField, p: Sequence[float]) -> np.ndarray:
    """Coefficients of ``[a, b]`` at ``p``, from exact first derivatives of the coefficients."""
    jets = jc.seed(*p)
    ca = [jc.as_jet(c) for c in a.at(*jets)]
    cb = [jc.as_jet(c) for c in b.at(*jets)]
    va = np.array([c.v for c in ca[:3]])
    vb = np.array([c.v for c in cb[:3]])
    out = []
    for i in range(4):
        ga = np.array(ca[i].g)
        gb = np.array(cb[i].g)
        out.append(float(va @ gb - vb @ ga))
    return np.array(out)


def kolmogorov_fields() -> Dict[str, NumericField]:
    """The Kolmogorov basis as numeric fields."""
    z = 0.0
    return {
        "Pt": NumericField("Pt", lambda t, x, y: (1.0, z, z, z)),
        "D": NumericField("D", lambda t, x, y: (2 * t, x, 3 * y, -2.0 + 0 * t)),
        "K": NumericField("K", lambda t, x, y: (t * t, t * x + 3 * y, 3 * t * y, -(x * x + 2 * t))),
        "P3": NumericField("P3", lambda t, x, y: (z, 3 * t * t, t ** 3, 3 * (y - t * x))),
        "P2": NumericField("P2", lambda t, x, y: (z, 2 * t, t * t, -x + 0 * t)),
        "P1": NumericField("P1", lambda t, x, y: (z, 1.0, t, z)),
        "P0": NumericField("P0", lambda t, x, y: (z, z, 1.0, z)),
        "I": NumericField("I", lambda t, x, y: (z, z, z, 1.0)),
    }


def _basis_k34(g: float) -> Dict[str, NumericField]:
    E = jc.exp
    return {
        "Pt": NumericField("Pt", lambda t, x, y: tuple(E(-g * t) * c for c in (
            1 / g, 0.5 * (3 * g * y - x), -1.5 * y, -(x * x / 4 + 0.75 * g * x * y + 9 / 16 * g * g * y * y - 1.5)))),
        "D": NumericField("D", lambda t, x, y: (2 / g, 0.0, 0.0, 1.0)),
        "K": NumericField("K", lambda t, x, y: tuple(E(g * t) * c for c in (
            1 / g, 0.5 * (3 * g * y + x), 1.5 * y, -(0.75 * x * x + 0.75 * g * x * y - 9 / 16 * g * g * y * y + 0.5)))),
        "P3": NumericField("P3", lambda t, x, y: tuple(E(1.5 * g * t) * c for c in (
            0.0, 1.5 + 0 * t, 1 / g + 0 * t, 0.75 * (g * y - 2 * x)))),
        "P2": NumericField("P2", lambda t, x, y: tuple(E(0.5 * g * t) * c for c in (0.0, 0.5, 1 / g, 0.0))),
        "P1": NumericField("P1", lambda t, x, y: tuple(E(-0.5 * g * t) * c for c in (
            0.0, -0.5, 1 / g, 0.25 * (3 * g * y + 2 * x)))),
        "P0": NumericField("P0", lambda t, x, y: tuple(E(-1.5 * g * t) * c for c in (0.0, -1.5, 1 / g, 0.0))),
        "I": NumericField("I", lambda t, x, y: (0.0, 0.0, 0.0, 1.0)),
    }


def _basis_k316(g: float) -> Dict[str, NumericField]:
    E = jc.exp
    r = 1 / SQRT2
    return {
        "Pt": NumericField("Pt", lambda t, x, y: tuple(E(-0.5 * g * t) * c for c in (
            2 / g, (3 * g * y - 2 * x) / 4, -1.5 * y, 2.0 + 0 * t))),
        "D": NumericField("D", lambda t, x, y: (4 / g, 0.0, 0.0, 2.0)),
        "K": NumericField("K", lambda t, x, y: tuple(E(0.5 * g * t) * c for c in (
            2 / g, (3 * g * y + 2 * x) / 4, 1.5 * y, -(3 * g * y + 4 * x) ** 2 / 32))),
        "P3": NumericField("P3", lambda t, x, y: tuple(r * E(0.75 * g * t) * c for c in (
            0.0, 3.0 + 0 * t, 4 / g + 0 * t, -0.75 * (4 * x + g * y)))),
        "P2": NumericField("P2", lambda t, x, y: tuple(r * E(0.25 * g * t) * c for c in (
            0.0, 1.0 + 0 * t, 4 / g + 0 * t, -(4 * x + 3 * g * y) / 4))),
        "P1": NumericField("P1", lambda t, x, y: tuple(r * E(-0.25 * g * t) * c for c in (0.0, -1.0, 4 / g, 0.0))),
        "P0": NumericField("P0", lambda t, x, y: tuple(r * E(-0.75 * g * t) * c for c in (0.0, -3.0, 4 / g, 0.0))),
        "I": NumericField("I", lambda t, x, y: (0.0, 0.0, 0.0, 1.0)),
    }


def kramers_basis(variant) -> Dict[str, NumericField]:
    """Essential algebra of the Kramers variant, labelled by the Kolmogorov field it is mapped to."""
    v = _variant(variant)
    return _basis_k34(v.gamma) if v.name == "k34" else _basis_k316(v.gamma)


def pushforward_at(variant, field: NumericField, p: Sequence[float]) -> np.ndarray:
    """Coefficients of ``Phi_* field`` at ``Phi(p)``, in the ``(tau, xi, eta, phi)`` layout."""
    v = _variant(variant)
    jets = jc.seed(*p)
    img = [jc.as_jet(c) for c in point_forward(v, *jets)]
    lm = jc.as_jet(log_multiplier(v, *jets))
    c = field.values(p)
    vec = c[:3]
    out = [float(np.dot(np.array(comp.g), vec)) for comp in img]
    out.append(float(np.dot(np.array(lm.g), vec) + c[3]))
    return np.array(out)


def pushforward_gap(variant, label: str, points: Sequence[Sequence[float]]) -> float:
    """Max relative gap between ``Phi_*`` of a Kramers field and the Kolmogorov field of the same label."""
    v = _variant(variant)
    hat = kramers_basis(v)[label]
    target = kolmogorov_fields()[label]
    worst = 0.0
    for p in points:
        q = [jc.value_of(c) for c in point_forward(v, *p)]
        got = pushforward_at(v, hat, p)
        want = target.values(q)
        worst = max(worst, float(np.max(np.abs(got - want)) / max(1.0, float(np.max(np.abs(want))))))
    return worst


def structure_gap(variant, points: Sequence[Sequence[float]]) -> float:
    """Max gap between numeric brackets of the Kramers basis and the Kolmogorov structure constants."""
    basis = kramers_basis(variant)
    labels = KOLMOGOROV_LABELS
    worst = 0.0
    for p in points:
        vals = {k: basis[k].values(p) for k in labels}
        for i, a in enumerate(labels):
            for b in labels[i + 1:]:
                got = bracket_at(basis[a], basis[b], p)
                want = np.zeros(4)
                for k, c in KOLMOGOROV_RELATIONS.get((a, b), {}).items():
                    want += float(c) * vals[k]
                scale = max(1.0, float(np.max(np.abs(want))))
                worst = max(worst, float(np.max(np.abs(got - want))) / scale)
    return worst


def sample_points(n: int = 30, seed_value: int = 42) -> List[Tuple[float, float, float]]:
    return [tuple(float(c) for c in row) for row in jc.quasi_random_points(BOX, n, seed_value)]


# ---------------------------------------------------------------------------
# flows


def flow(field: NumericField, p: Sequence[float], eps: float) -> Tuple[float, float, float, float]:
    """Image of ``(t, x, y, u)`` under the flow of ``field`` for parameter ``eps``."""
    def rhs(_s, z):
        c = field.values(z[:3])
        return [c[0], c[1], c[2], c[3] * z[3]]

    sol = solve_ivp(rhs, (0.0, eps), list(p), method="DOP853", rtol=1e-12, atol=1e-13)
    return tuple(float(c) for c in sol.y[:, -1])


def conjugation_gap(variant, label: str, eps: float, points: Sequence[Sequence[float]]) -> float:
    """``Phi o flow(hat V) o Phi^-1`` against the Kolmogorov group element ``exp(eps V)``."""
    v = _variant(variant)
    hat = kramers_basis(v)[label]
    g = grp.elementary(label, eps)
    worst = 0.0
    for p in points:
        start = phi_map(v, "inverse", (*p, 1.0))
        moved = phi_map(v, "forward", flow(hat, start, eps))
        want = grp.apply(g, (*p, 1.0))
        gap = max(abs(a - b) / max(1.0, abs(b)) for a, b in zip(moved, want))
        worst = max(worst, gap)
    return worst


def kolmogorov_points(variant, n: int = 10, seed_value: int = 5) -> List[Tuple[float, float, float]]:
    """Images under ``Phi`` of sample Kramers points."""
    v = _variant(variant)
    return [tuple(jc.value_of(c) for c in point_forward(v, *p)) for p in sample_points(n, seed_value)]
