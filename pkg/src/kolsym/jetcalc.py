"""Second-order forward-mode jets in up to three variables and PDE residuals.

A :class:`Jet2` carries a value, its gradient and the six independent entries
of its Hessian.  Arithmetic and elementary functions propagate all three
exactly to second order, so residuals of closed-form solutions are computed
without finite differences.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import qmc

# Hessian storage order: (00, 01, 02, 11, 12, 22)
_H = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (0, 2): 2, (2, 0): 2, (1, 1): 3, (1, 2): 4, (2, 1): 4, (2, 2): 5}
_PAIRS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))

Real = Union[int, float]


class JetDomainError(ValueError):
    """An elementary function was evaluated outside its domain."""


class Jet2:
    """Truncated second-order Taylor expansion of a scalar field."""

    __slots__ = ("v", "g", "h")

    def __init__(self, v: float, g: Sequence[float] = (0.0, 0.0, 0.0), h: Sequence[float] = (0.0,) * 6):
        self.v = v
        self.g = tuple(g)
        self.h = tuple(h)

    # accessors ---------------------------------------------------------
    @property
    def value(self) -> float:
        return self.v

    @property
    def grad(self) -> Tuple[float, float, float]:
        return self.g

    def d(self, i: int) -> float:
        return self.g[i]

    def d2(self, i: int, j: int) -> float:
        return self.h[_H[(i, j)]]

    def hessian(self) -> np.ndarray:
        return np.array([[self.d2(i, j) for j in range(3)] for i in range(3)])

    def is_finite(self) -> bool:
        return all(math.isfinite(c) for c in (self.v, *self.g, *self.h))

    @staticmethod
    def const(c: Real) -> "Jet2":
        return Jet2(float(c))

    # arithmetic --------------------------------------------------------
    def __add__(self, o: Union["Jet2", Real]) -> "Jet2":
        if isinstance(o, Jet2):
            return Jet2(self.v + o.v, tuple(a + b for a, b in zip(self.g, o.g)),
                        tuple(a + b for a, b in zip(self.h, o.h)))
        return Jet2(self.v + o, self.g, self.h)

    __radd__ = __add__

    def __neg__(self) -> "Jet2":
        return Jet2(-self.v, tuple(-a for a in self.g), tuple(-a for a in self.h))

    def __sub__(self, o: Union["Jet2", Real]) -> "Jet2":
        return self + (-o)

    def __rsub__(self, o: Real) -> "Jet2":
        return (-self) + o

    def __mul__(self, o: Union["Jet2", Real]) -> "Jet2":
        if isinstance(o, Jet2):
            a, b = self, o
            g = tuple(a.v * gb + b.v * ga for ga, gb in zip(a.g, b.g))
            h = tuple(a.v * b.h[k] + b.v * a.h[k] + a.g[i] * b.g[j] + a.g[j] * b.g[i]
                      for k, (i, j) in enumerate(_PAIRS))
            return Jet2(a.v * b.v, g, h)
        return Jet2(self.v * o, tuple(a * o for a in self.g), tuple(a * o for a in self.h))

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet2":
        if self.v == 0:
            raise JetDomainError("division by a jet with zero value")
        r = 1.0 / self.v
        return self.chain(r, -r * r, 2 * r * r * r)

    def __truediv__(self, o: Union["Jet2", Real]) -> "Jet2":
        if isinstance(o, Jet2):
            return self * o.reciprocal()
        return self * (1.0 / o)

    def __rtruediv__(self, o: Real) -> "Jet2":
        return self.reciprocal() * o

    def __pow__(self, n: Real) -> "Jet2":
        if isinstance(n, int) and n >= 0:
            out = Jet2(1.0)
            for _ in range(n):
                out = out * self
            return out
        return power(self, n)

    def chain(self, f0: float, f1: float, f2: float) -> "Jet2":
        """Compose a scalar function with value ``f0`` and derivatives ``f1``, ``f2`` at ``self.v``."""
        g = tuple(f1 * a for a in self.g)
        h = tuple(f1 * self.h[k] + f2 * self.g[i] * self.g[j] for k, (i, j) in enumerate(_PAIRS))
        return Jet2(f0, g, h)

    def __repr__(self) -> str:
        return f"Jet2(v={self.v!r}, g={self.g!r}, h={self.h!r})"

    def __float__(self) -> float:
        return float(self.v)


def seed(t: Real, x: Real, y: Real = 0.0) -> Tuple[Jet2, Jet2, Jet2]:
    """Coordinate jets with unit gradients and zero Hessians."""
    return (Jet2(float(t), (1.0, 0.0, 0.0)), Jet2(float(x), (0.0, 1.0, 0.0)), Jet2(float(y), (0.0, 0.0, 1.0)))


def as_jet(a: Union[Jet2, Real]) -> Jet2:
    return a if isinstance(a, Jet2) else Jet2(float(a))


def compose(f0: float, f1: Sequence[float], f2: Sequence[Sequence[float]], args: Sequence[Jet2]) -> Jet2:
    """Jet of ``f(a_1, ..., a_m)`` from the value, gradient and Hessian of ``f`` at the argument values."""
    args = [as_jet(a) for a in args]
    m = len(args)
    g = tuple(sum(f1[a] * args[a].g[i] for a in range(m)) for i in range(3))
    h = tuple(
        sum(f1[a] * args[a].h[k] for a in range(m))
        + sum(f2[a][b] * args[a].g[i] * args[b].g[j] for a in range(m) for b in range(m))
        for k, (i, j) in enumerate(_PAIRS)
    )
    return Jet2(float(f0), g, h)


# ---------------------------------------------------------------------------
# elementary functions; each accepts a Jet2 or a plain real


def _generic(a, f0, f1, f2):
    if isinstance(a, Jet2):
        return a.chain(f0, f1, f2)
    return f0


def exp(a):
    v = a.v if isinstance(a, Jet2) else a
    e = math.exp(v)
    return _generic(a, e, e, e)


def log(a):
    v = a.v if isinstance(a, Jet2) else a
    if v <= 0:
        raise JetDomainError(f"log of non-positive value {v}")
    return _generic(a, math.log(v), 1.0 / v, -1.0 / (v * v))


def sqrt(a):
    v = a.v if isinstance(a, Jet2) else a
    if v <= 0:
        raise JetDomainError(f"sqrt needs a positive value, got {v}")
    s = math.sqrt(v)
    return _generic(a, s, 0.5 / s, -0.25 / (s * v))


def sin(a):
    v = a.v if isinstance(a, Jet2) else a
    s, c = math.sin(v), math.cos(v)
    return _generic(a, s, c, -s)


def cos(a):
    v = a.v if isinstance(a, Jet2) else a
    s, c = math.sin(v), math.cos(v)
    return _generic(a, c, -s, -c)


def sinh(a):
    v = a.v if isinstance(a, Jet2) else a
    s, c = math.sinh(v), math.cosh(v)
    return _generic(a, s, c, s)


def cosh(a):
    v = a.v if isinstance(a, Jet2) else a
    s, c = math.sinh(v), math.cosh(v)
    return _generic(a, c, s, c)


def atan(a):
    v = a.v if isinstance(a, Jet2) else a
    d = 1.0 / (1.0 + v * v)
    return _generic(a, math.atan(v), d, -2.0 * v * d * d)


def erf(a):
    v = a.v if isinstance(a, Jet2) else a
    d = 2.0 / math.sqrt(math.pi) * math.exp(-v * v)
    return _generic(a, math.erf(v), d, -2.0 * v * d)


def power(a, p: Real):
    """``a**p`` for real ``p``; non-integer ``p`` requires a positive base."""
    v = a.v if isinstance(a, Jet2) else a
    if isinstance(p, int) or float(p).is_integer():
        n = int(p)
        if v == 0 and n < 2:
            if n < 0:
                raise JetDomainError("negative power of zero")
        f0 = v ** n
        f1 = n * v ** (n - 1) if n != 0 else 0.0
        f2 = n * (n - 1) * v ** (n - 2) if n not in (0, 1) else 0.0
        return _generic(a, float(f0), float(f1), float(f2))
    if v <= 0:
        raise JetDomainError(f"non-integer power of non-positive value {v}")
    f0 = v ** p
    return _generic(a, f0, p * f0 / v, p * (p - 1) * f0 / (v * v))


def abs_power(a, p: Real):
    """``|a|**p``, sign-aware; evaluation at zero is a domain error."""
    v = a.v if isinstance(a, Jet2) else a
    if v == 0:
        raise JetDomainError("|z|^p evaluated on its singular locus")
    s = 1.0 if v > 0 else -1.0
    av = abs(v)
    f0 = av ** p
    return _generic(a, f0, s * p * f0 / av, p * (p - 1) * f0 / (av * av))


def sign(a) -> float:
    v = a.v if isinstance(a, Jet2) else a
    if v == 0:
        raise JetDomainError("sign evaluated at zero")
    return 1.0 if v > 0 else -1.0


def value_of(a) -> float:
    return a.v if isinstance(a, Jet2) else float(a)


_LIFTS = {
    "exp": exp, "ln": log, "log": log, "sqrt": sqrt, "sin": sin, "cos": cos,
    "sinh": sinh, "cosh": cosh, "atan": atan, "erf": erf,
}


def lift(fname: str, arg: Jet2, p: Optional[Real] = None) -> Jet2:
    """Apply an elementary function by name: ``exp, ln, sqrt, sin, cos, atan, erf, pow, abspow``."""
    if fname in _LIFTS:
        return _LIFTS[fname](arg)
    if fname == "pow":
        return power(arg, p)
    if fname == "abspow":
        return abs_power(arg, p)
    raise KeyError(f"unknown elementary function {fname!r}")


# ---------------------------------------------------------------------------
# solutions


Evaluator = Callable[..., Jet2]
Predicate = Callable[..., bool]


def _always(*_args) -> bool:
    return True


@dataclass(frozen=True)
class Solution:
    """A Jet2-valued field ``(coordinate jets) -> Jet2`` with a domain predicate on float points."""

    evaluator: Evaluator
    domain: Predicate = _always
    label: str = ""
    arity: int = 3

    def __call__(self, *coords) -> Jet2:
        return self.evaluator(*coords)

    def at(self, *point: Real) -> Jet2:
        jets = seed(*point) if len(point) == 3 else seed(*point, 0.0)[: len(point)]
        return self.evaluator(*jets)

    def value(self, *point: Real) -> float:
        return self.at(*point).v


# ---------------------------------------------------------------------------
# residuals


def _kolmogorov(u: Jet2, p) -> Tuple[float, float]:
    x = p[1]
    r = u.d(0) + x * u.d(2) - u.d2(1, 1)
    scale = abs(u.d2(1, 1)) + abs(x * u.d(2)) + abs(u.d(0))
    return r, scale


def _heat(u: Jet2, p) -> Tuple[float, float]:
    return u.d(0) - u.d2(1, 1), abs(u.d(0)) + abs(u.d2(1, 1))


def _heat_isq(mu: float):
    def res(u: Jet2, p) -> Tuple[float, float]:
        x = p[1]
        pot = mu / (x * x) * u.v
        return u.d(0) - u.d2(1, 1) - pot, abs(u.d(0)) + abs(u.d2(1, 1)) + abs(pot)
    return res


def kramers_force(variant: str, gamma: float) -> float:
    """Coefficient ``c`` in the drift ``gamma (x + c gamma y)``."""
    if variant == "k34":
        return -0.75
    if variant == "k316":
        return 3.0 / 16.0
    raise KeyError(variant)


def _kramers(variant: str, gamma: float):
    c = kramers_force(variant, gamma)

    def res(u: Jet2, p) -> Tuple[float, float]:
        _, x, y = p
        drift = gamma * (x + c * gamma * y)
        terms = (u.d(0), x * u.d(2), -gamma * u.d2(1, 1), -drift * u.d(1), -gamma * u.v)
        return sum(terms), sum(abs(a) for a in terms)
    return res


def equation(eq: Union[str, Tuple]) -> Callable[[Jet2, Sequence[float]], Tuple[float, float]]:
    """Residual function ``(u_jet, point) -> (signed residual, scale)``.

    ``eq`` is ``'kolmogorov'``, ``'heat'``, ``('heat_isq', mu)``,
    ``('kramers34', gamma)``, ``('kramers316', gamma)`` or ``('reduced', spec)``
    where ``spec`` provides ``residual_terms(jet, point)``.
    """
    if eq == "kolmogorov":
        return _kolmogorov
    if eq == "heat":
        return _heat
    if isinstance(eq, tuple):
        kind, arg = eq
        if kind == "heat_isq":
            return _heat_isq(float(arg))
        if kind == "kramers34":
            return _kramers("k34", float(arg))
        if kind == "kramers316":
            return _kramers("k316", float(arg))
        if kind == "reduced":
            return arg.residual_terms
    raise KeyError(f"unknown equation {eq!r}")


def arity_of(eq) -> int:
    if eq == "heat" or (isinstance(eq, tuple) and eq[0] == "heat_isq"):
        return 2
    if isinstance(eq, tuple) and eq[0] == "reduced":
        return eq[1].arity
    return 3


def residual(eq, u: Union[Solution, Evaluator], point: Sequence[Real]) -> float:
    """Signed residual of ``eq`` for the field ``u`` at ``point``."""
    res, _ = residual_terms(eq, u, point)
    return res


def residual_terms(eq, u, point: Sequence[Real]) -> Tuple[float, float]:
    pt = tuple(float(c) for c in point)
    jets = seed(*pt) if len(pt) == 3 else seed(*pt, 0.0)[: len(pt)]
    val = u(*jets)
    if not isinstance(val, Jet2):
        val = Jet2(float(val))
    if not val.is_finite():
        raise JetDomainError(f"non-finite jet at {pt}")
    padded = pt + (0.0,) * (3 - len(pt))
    return equation(eq)(val, padded)


@dataclass
class ResidualReport:
    points: int
    max_abs: float
    max_rel: float
    failures: List[Tuple[Tuple[float, ...], float]] = field(default_factory=list)
    tol_rel: float = 1e-8

    @property
    def passed(self) -> bool:
        return not self.failures and self.points > 0

    def to_dict(self) -> dict:
        return {
            "points": self.points,
            "max_abs": float(f"{self.max_abs:.17g}"),
            "max_rel": float(f"{self.max_rel:.17g}"),
            "tol_rel": self.tol_rel,
            "failures": len(self.failures),
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class DomainTooThinError(ValueError):
    pass


def quasi_random_points(box: Sequence[Tuple[float, float]], n: int, seed_value: int) -> np.ndarray:
    """Scrambled Halton points in a box; deterministic in ``seed_value``."""
    d = len(box)
    sampler = qmc.Halton(d=d, scramble=True, seed=seed_value)
    raw = sampler.random(n)
    lo = np.array([b[0] for b in box], dtype=float)
    hi = np.array([b[1] for b in box], dtype=float)
    return lo + raw * (hi - lo)


def sample_residuals(eq, u: Union[Solution, Evaluator], box: Sequence[Tuple[float, float]], n: int = 200,
                     seed_value: int = 42, tol_rel: float = 1e-8, domain: Optional[Predicate] = None,
                     oversample: int = 4) -> ResidualReport:
    """Residual statistics over ``n`` quasi-random admissible points of ``box``.

    Points failing the domain predicate are skipped; candidates are drawn from an
    oversampled sequence so that up to ``n`` admissible points are collected.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    pred = domain
    if pred is None and isinstance(u, Solution):
        pred = u.domain
    pred = pred or _always
    cand = quasi_random_points(box, n * oversample, seed_value)
    pts = [tuple(float(c) for c in row) for row in cand if pred(*row)][:n]
    if not pts or 2 * len(pts) < n:
        raise DomainTooThinError(f"domain too thin: {len(pts)} admissible points of {n}")
    fn = equation(eq)
    max_abs = 0.0
    max_rel = 0.0
    fails = []
    for p in pts:
        jets = seed(*p) if len(p) == 3 else seed(*p, 0.0)[: len(p)]
        val = u(*jets)
        padded = p + (0.0,) * (3 - len(p))
        if not val.is_finite():
            fails.append((p, math.inf))
            max_abs = max_rel = math.inf
            continue
        r, scale = fn(val, padded)
        rel = abs(r) / max(1.0, scale)
        max_abs = max(max_abs, abs(r))
        max_rel = max(max_rel, rel)
        if rel > tol_rel:
            fails.append((p, rel))
    return ResidualReport(len(pts), max_abs, max_rel, fails, tol_rel)


def finite_difference_check(f: Callable[..., Jet2], point: Sequence[float], step: float = 1e-5) -> float:
    """Largest relative gap between jet derivatives and central differences of values."""
    p = np.array(point, dtype=float)
    d = len(p)

    def val(q):
        return f(*seed(*q) if d == 3 else seed(*q, 0.0)[:d]).v

    jet = f(*(seed(*p) if d == 3 else seed(*p, 0.0)[:d]))
    worst = 0.0
    for i in range(d):
        e = np.zeros(d)
        e[i] = step
        fd = (val(p + e) - val(p - e)) / (2 * step)
        worst = max(worst, abs(fd - jet.d(i)) / max(1.0, abs(jet.d(i))))
        for j in range(i, d):
            e2 = np.zeros(d)
            e2[j] = step
            fd2 = (val(p + e + e2) - val(p + e - e2) - val(p - e + e2) + val(p - e - e2)) / (4 * step * step)
            worst = max(worst, abs(fd2 - jet.d2(i, j)) / max(1.0, abs(jet.d2(i, j))))
    return worst
