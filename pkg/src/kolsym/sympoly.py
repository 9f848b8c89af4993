"""Exact multivariate Laurent polynomials over base and jet variables.

A polynomial lives in a :class:`Space`, a fixed tuple of independent
coordinates together with one dependent variable ``u`` and its partial
derivatives (jet variables).  Coefficients are :class:`fractions.Fraction`
values, so every operation here is exact.

Monomials are stored as a pair ``(base, jets)``:

* ``base`` is a tuple of integer exponents, one per coordinate (negative
  exponents allowed);
* ``jets`` is a sorted tuple of ``(multiindex, exponent)`` pairs with positive
  exponents, where ``multiindex`` counts derivatives per coordinate.  The
  multi-index of all zeros is ``u`` itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

MAX_JET_ORDER = 4

Multi = Tuple[int, ...]
JetPart = Tuple[Tuple[Multi, int], ...]
Monomial = Tuple[Tuple[int, ...], JetPart]
Number = Union[int, Fraction]


class SpaceMismatchError(ValueError):
    """Raised when polynomials from different variable universes are mixed."""


class JetOrderError(ValueError):
    """Raised when a total derivative would exceed the jet-order cap."""


@dataclass(frozen=True)
class Space:
    """A variable universe: independent coordinates plus the dependent ``u``.

    ``labels`` are the short names used when rendering jet variables, e.g.
    ``u_xy`` for coordinates ``('t', 'x', 'y')`` or ``u_12`` for the reduced
    coordinates ``('z1', 'z2')`` with labels ``('1', '2')``.
    """

    name: str
    coords: Tuple[str, ...]
    labels: Tuple[str, ...] = ()
    dependent: str = "u"

    def __post_init__(self) -> None:
        if not self.labels:
            object.__setattr__(self, "labels", self.coords)
        if len(self.labels) != len(self.coords):
            raise ValueError("labels and coords must have equal length")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def index(self, coord: Union[str, int]) -> int:
        if isinstance(coord, int):
            if not 0 <= coord < self.dim:
                raise IndexError(coord)
            return coord
        if coord in self.coords:
            return self.coords.index(coord)
        if coord in self.labels:
            return self.labels.index(coord)
        raise KeyError(f"unknown coordinate {coord!r} in space {self.name!r}")

    def multi(self, spec: Union[str, Iterable[Union[str, int]]]) -> Multi:
        """Multi-index from a derivative spelling such as ``'xy'`` or ``['t', 'x']``."""
        counts = [0] * self.dim
        items = list(spec) if not isinstance(spec, str) else self._split(spec)
        for item in items:
            counts[self.index(item)] += 1
        return tuple(counts)

    def _split(self, spec: str) -> list:
        out = []
        i = 0
        while i < len(spec):
            for lab in sorted(self.labels, key=len, reverse=True):
                if spec.startswith(lab, i):
                    out.append(lab)
                    i += len(lab)
                    break
            else:
                raise KeyError(f"cannot parse derivative {spec!r} in space {self.name!r}")
        return out

    def jet_name(self, m: Multi) -> str:
        if not any(m):
            return self.dependent
        parts = "".join(lab * k for lab, k in zip(self.labels, m))
        return f"{self.dependent}_{parts}"

    # constructors -----------------------------------------------------
    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {})

    def const(self, c: Number) -> "LaurentPoly":
        return LaurentPoly(self, {(self._zero_base(), ()): Fraction(c)})

    def var(self, coord: Union[str, int], power: int = 1) -> "LaurentPoly":
        base = [0] * self.dim
        base[self.index(coord)] = power
        return LaurentPoly(self, {(tuple(base), ()): Fraction(1)})

    def u(self) -> "LaurentPoly":
        return self.jet(())

    def jet(self, spec: Union[str, Iterable[Union[str, int]], Multi]) -> "LaurentPoly":
        if isinstance(spec, tuple) and len(spec) == self.dim and all(isinstance(k, int) for k in spec):
            m = spec
        else:
            m = self.multi(spec)
        if sum(m) > MAX_JET_ORDER:
            raise JetOrderError(f"jet order {sum(m)} exceeds {MAX_JET_ORDER}")
        return LaurentPoly(self, {(self._zero_base(), ((m, 1),)): Fraction(1)})

    def _zero_base(self) -> Tuple[int, ...]:
        return (0,) * self.dim


KOLMOGOROV = Space("kolmogorov", ("t", "x", "y"))
HEAT = Space("heat", ("z1", "z2"), ("1", "2"), dependent="w")
HEAT_ISQ = Space("heat_isq", ("t", "x"))


def _mul_jets(a: JetPart, b: JetPart) -> JetPart:
    if not a:
        return b
    if not b:
        return a
    acc: Dict[Multi, int] = dict(a)
    for m, e in b:
        acc[m] = acc.get(m, 0) + e
    return tuple(sorted(acc.items()))


def _add_base(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(i + j for i, j in zip(a, b))


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    """Immutable sparse Laurent polynomial with rational coefficients."""

    space: Space
    _terms: Mapping[Monomial, Fraction] = field(repr=False)

    def __post_init__(self) -> None:
        clean = {k: Fraction(v) for k, v in self._terms.items() if v != 0}
        for (_, jets) in clean:
            for _, e in jets:
                if e <= 0:
                    raise ValueError("jet variables must carry positive exponents")
        object.__setattr__(self, "_terms", dict(sorted(clean.items())))

    # basic protocol ---------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.space.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.space == other.space and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.space, tuple(self._terms.items())))

    def _coerce(self, other: Union["LaurentPoly", Number]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.space != self.space:
                raise SpaceMismatchError(f"cannot mix spaces {self.space.name!r} and {other.space.name!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.space.const(other)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    # arithmetic -------------------------------------------------------
    def __add__(self, other: Union["LaurentPoly", Number]) -> "LaurentPoly":
        o = self._coerce(other)
        acc = dict(self._terms)
        for k, v in o._terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return LaurentPoly(self.space, acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.space, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: Union["LaurentPoly", Number]) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Number) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Union["LaurentPoly", Number]) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = self._coerce(other)
        acc: Dict[Monomial, Fraction] = {}
        for (b1, j1), c1 in self._terms.items():
            for (b2, j2), c2 in o._terms.items():
                key = (_add_base(b1, b2), _mul_jets(j1, j2))
                acc[key] = acc.get(key, Fraction(0)) + c1 * c2
        return LaurentPoly(self.space, acc)

    __rmul__ = __mul__

    def scale(self, c: Number) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly(self.space, {k: v * c for k, v in self._terms.items()})

    def __truediv__(self, c: Number) -> "LaurentPoly":
        return self.scale(1 / Fraction(c))

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers only for single base monomials")
            ((base, jets), c), = self._terms.items()
            if jets:
                raise ValueError("negative powers of jet variables are not allowed")
            return LaurentPoly(self.space, {(tuple(e * n for e in base), ()): c ** n})
        out = self.space.const(1)
        sq = self
        while n:
            if n & 1:
                out = out * sq
            sq = sq * sq
            n >>= 1
        return out

    # structure --------------------------------------------------------
    def jet_order(self) -> int:
        return max((sum(m) for (_, jets) in self._terms for m, _ in jets), default=-1)

    def jet_vars(self) -> set:
        return {m for (_, jets) in self._terms for m, _ in jets}

    def is_base_only(self) -> bool:
        return all(not jets for (_, jets) in self._terms)

    def u_degree(self) -> int:
        return max((sum(e for _, e in jets) for (_, jets) in self._terms), default=0)

    def constant_term(self) -> Fraction:
        return self._terms.get((self.space._zero_base(), ()), Fraction(0))

    # differentiation --------------------------------------------------
    def partial(self, coord: Union[str, int]) -> "LaurentPoly":
        """Partial derivative in a base coordinate, jet variables held fixed."""
        i = self.space.index(coord)
        acc: Dict[Monomial, Fraction] = {}
        for (base, jets), c in self._terms.items():
            e = base[i]
            if e == 0:
                continue
            nb = list(base)
            nb[i] -= 1
            key = (tuple(nb), jets)
            acc[key] = acc.get(key, Fraction(0)) + c * e
        return LaurentPoly(self.space, acc)

    def diff_jet(self, m: Multi) -> "LaurentPoly":
        """Partial derivative with respect to the jet variable with multi-index ``m``."""
        acc: Dict[Monomial, Fraction] = {}
        for (base, jets), c in self._terms.items():
            d = dict(jets)
            e = d.get(m, 0)
            if e == 0:
                continue
            if e == 1:
                del d[m]
            else:
                d[m] = e - 1
            key = (base, tuple(sorted(d.items())))
            acc[key] = acc.get(key, Fraction(0)) + c * e
        return LaurentPoly(self.space, acc)

    def total_derivative(self, coord: Union[str, int], cap: Optional[int] = MAX_JET_ORDER) -> "LaurentPoly":
        """Total derivative treating ``u`` and its jets as functions of the coordinates.

        ``cap`` bounds the resulting jet order; ``None`` disables the bound
        (used internally by :func:`reduce_mod_pde`).
        """
        i = self.space.index(coord)
        out = self.partial(i)
        acc: Dict[Monomial, Fraction] = dict(out._terms)
        for (base, jets), c in self._terms.items():
            for m, e in jets:
                nm = list(m)
                nm[i] += 1
                nm_t = tuple(nm)
                if cap is not None and sum(nm_t) > cap:
                    raise JetOrderError(f"total derivative produces jet order {sum(nm_t)} > {cap}")
                d = dict(jets)
                if e == 1:
                    del d[m]
                else:
                    d[m] = e - 1
                d[nm_t] = d.get(nm_t, 0) + 1
                key = (base, tuple(sorted(d.items())))
                acc[key] = acc.get(key, Fraction(0)) + c * e
        return LaurentPoly(self.space, acc)

    def total_derivative_multi(self, m: Multi, cap: Optional[int] = MAX_JET_ORDER) -> "LaurentPoly":
        out = self
        for i, k in enumerate(m):
            for _ in range(k):
                out = out.total_derivative(i, cap=cap)
        return out

    # substitution and evaluation -------------------------------------
    def substitute_jets(self, repl: Mapping[Multi, "LaurentPoly"]) -> "LaurentPoly":
        """Replace jet variables by polynomials in the same space."""
        out = self.space.zero()
        for (base, jets), c in self._terms.items():
            term = LaurentPoly(self.space, {(base, ()): c})
            kept = []
            for m, e in jets:
                if m in repl:
                    term = term * (repl[m] ** e)
                else:
                    kept.append((m, e))
            if kept:
                term = term * LaurentPoly(self.space, {(self.space._zero_base(), tuple(kept)): Fraction(1)})
            out = out + term
        return out

    def evaluate(self, coords: Iterable[float], jets: Optional[Mapping[Multi, float]] = None) -> float:
        """Float evaluation at a point; ``jets`` supplies values of jet variables."""
        pt = list(coords)
        jets = jets or {}
        total = 0.0
        for (base, jp), c in self._terms.items():
            val = float(c)
            for b, e in zip(pt, base):
                if e:
                    val *= b ** e
            for m, e in jp:
                val *= jets[m] ** e
            total += val
        return total

    # rendering --------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for (base, jets), c in self._terms.items():
            factors = []
            for name, e in zip(self.space.coords, base):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            for m, e in jets:
                nm = self.space.jet_name(m)
                factors.append(nm if e == 1 else f"{nm}^{e}")
            mono = "*".join(factors)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        text = " + ".join(pieces)
        return text.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPoly[{self.space.name}]({self})"


def poly_arith(a: LaurentPoly, b: Union[LaurentPoly, Number], op: str) -> LaurentPoly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` on two operands."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        if isinstance(b, LaurentPoly):
            raise TypeError("scale expects a rational factor")
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def total_derivative(p: LaurentPoly, direction: Union[str, int]) -> LaurentPoly:
    return p.total_derivative(direction)


@dataclass(frozen=True)
class EvolutionPDE:
    """An evolution equation ``u_<evol> = rhs`` with ``rhs`` free of evolution derivatives."""

    name: str
    rhs: LaurentPoly
    evolution: int = 0

    def __post_init__(self) -> None:
        for m in self.rhs.jet_vars():
            if m[self.evolution]:
                raise ValueError("right-hand side must not contain evolution derivatives")

    @property
    def space(self) -> Space:
        return self.rhs.space

    def lhs_minus_rhs(self) -> LaurentPoly:
        m = [0] * self.space.dim
        m[self.evolution] = 1
        return self.space.jet(tuple(m)) - self.rhs

    def replacement(self, m: Multi) -> LaurentPoly:
        """Expression for the jet ``u_m`` with every evolution derivative eliminated."""
        return _replacement(self, m)


_REPL_CACHE: Dict[Tuple[EvolutionPDE, Multi], LaurentPoly] = {}


def _replacement(eq: EvolutionPDE, m: Multi) -> LaurentPoly:
    key = (eq, m)
    hit = _REPL_CACHE.get(key)
    if hit is not None:
        return hit
    k = eq.evolution
    if m[k] == 0:
        out = eq.space.jet(m) if sum(m) <= MAX_JET_ORDER else _raw_jet(eq.space, m)
    else:
        # u_m = D^{m - e_k} rhs, with lower evolution derivatives eliminated recursively
        prev = list(m)
        prev[k] -= 1
        dirs = [i for i, c in enumerate(prev) for _ in range(c)]
        expr = eq.rhs
        for i in dirs:
            expr = expr.total_derivative(i, cap=None)
        out = _reduce(expr, eq)
    _REPL_CACHE[key] = out
    return out


def _raw_jet(space: Space, m: Multi) -> LaurentPoly:
    return LaurentPoly(space, {(space._zero_base(), ((m, 1),)): Fraction(1)})


def _reduce(p: LaurentPoly, eq: EvolutionPDE) -> LaurentPoly:
    k = eq.evolution
    targets = {m: _replacement(eq, m) for m in p.jet_vars() if m[k]}
    if not targets:
        return p
    return p.substitute_jets(targets)


def reduce_mod_pde(p: LaurentPoly, eq: EvolutionPDE) -> LaurentPoly:
    """Eliminate all evolution derivatives of ``u`` using the equation and its consequences."""
    if p.space != eq.space:
        raise SpaceMismatchError(f"polynomial in {p.space.name!r} but equation in {eq.space.name!r}")
    return _reduce(p, eq)


def kolmogorov_pde() -> EvolutionPDE:
    """``u_t = u_xx - x u_y``."""
    S = KOLMOGOROV
    return EvolutionPDE("kolmogorov", S.jet("xx") - S.var("x") * S.jet("y"))


def heat_pde(space: Space = HEAT) -> EvolutionPDE:
    """``u_1 = u_22`` on a two-coordinate space."""
    return EvolutionPDE("heat", space.jet((0, 2)))


def heat_isq_pde(mu: Number) -> EvolutionPDE:
    """``u_t = u_xx + mu x^-2 u``."""
    S = HEAT_ISQ
    return EvolutionPDE(f"heat_isq({Fraction(mu)})", S.jet("xx") + S.var("x", -2) * S.u() * Fraction(mu))
