"""Vector fields with Laurent-polynomial coefficients and the Lie-algebra toolkit.

Covers brackets, second-prolongation symmetry checks, structure constants,
sl(2) representation matrices, subalgebra closure and normalizers, and the
binary-cubic discriminant used to separate two-dimensional subalgebras.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from . import _exact
from .sympoly import (
    HEAT,
    HEAT_ISQ,
    KOLMOGOROV,
    EvolutionPDE,
    LaurentPoly,
    Space,
    SpaceMismatchError,
    reduce_mod_pde,
)

Number = Union[int, Fraction]


class NotClosedError(ValueError):
    """A bracket of two basis fields leaves their rational span."""

    def __init__(self, pair: Tuple[str, str]):
        super().__init__(f"not closed: bracket of {pair[0]} and {pair[1]} is outside the span")
        self.pair = pair


@dataclass(frozen=True, eq=False)
class VectorField:
    """``sum xi[i] d/dcoord_i + eta d/du``; ``eta`` may depend on ``u``."""

    xi: Tuple[LaurentPoly, ...]
    eta: LaurentPoly
    label: str = ""

    def __post_init__(self) -> None:
        sp = self.eta.space
        if len(self.xi) != sp.dim:
            raise ValueError("one xi component per coordinate is required")
        for c in self.xi:
            if c.space != sp:
                raise SpaceMismatchError("vector field components from different spaces")
            if not c.is_base_only():
                raise ValueError("xi components must not depend on u")

    @property
    def space(self) -> Space:
        return self.eta.space

    @classmethod
    def make(cls, space: Space, xi: Sequence[Union[LaurentPoly, Number]], eta: Union[LaurentPoly, Number] = 0,
             label: str = "") -> "VectorField":
        def lift(c):
            return c if isinstance(c, LaurentPoly) else space.const(c)
        return cls(tuple(lift(c) for c in xi), lift(eta), label)

    @classmethod
    def zero(cls, space: Space) -> "VectorField":
        return cls.make(space, [0] * space.dim, 0)

    def components(self) -> Tuple[LaurentPoly, ...]:
        return self.xi + (self.eta,)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components())

    def relabel(self, label: str) -> "VectorField":
        return VectorField(self.xi, self.eta, label)

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(tuple(a + b for a, b in zip(self.xi, other.xi)), self.eta + other.eta)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def __neg__(self) -> "VectorField":
        return self.scale(-1)

    def scale(self, c: Number) -> "VectorField":
        return VectorField(tuple(a.scale(c) for a in self.xi), self.eta.scale(c))

    def __rmul__(self, c: Number) -> "VectorField":
        return self.scale(c)

    def __mul__(self, c: Number) -> "VectorField":
        return self.scale(c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.components() == other.components()

    def __hash__(self) -> int:
        return hash(self.components())

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        """Action of the field as a derivation on a function of coordinates and ``u``."""
        out = self.eta * f.diff_jet((0,) * self.space.dim)
        for i, c in enumerate(self.xi):
            if not c.is_zero():
                out = out + c * f.partial(i)
        return out

    def characteristic(self) -> LaurentPoly:
        """``eta - sum xi[i] u_i``."""
        sp = self.space
        q = self.eta
        for i, c in enumerate(self.xi):
            m = [0] * sp.dim
            m[i] = 1
            q = q - c * sp.jet(tuple(m))
        return q

    def __str__(self) -> str:
        parts = []
        sp = self.space
        for name, c in zip(sp.coords, self.xi):
            if c:
                parts.append(f"({c})*d_{name}")
        if self.eta:
            parts.append(f"({self.eta})*d_{sp.dependent}")
        return " + ".join(parts) if parts else "0"


def bracket(V: VectorField, W: VectorField) -> VectorField:
    """Lie bracket ``[V, W] = V W - W V``."""
    if V.space != W.space:
        raise SpaceMismatchError("bracket of fields in different spaces")
    comps = [V.apply(b) - W.apply(a) for a, b in zip(V.components(), W.components())]
    return VectorField(tuple(comps[:-1]), comps[-1])


def check_symmetry(V: VectorField, eq: EvolutionPDE) -> LaurentPoly:
    """Determining expression of ``V`` for ``eq``; zero iff ``V`` is a Lie symmetry.

    Uses ``pr V = pr V_Q + sum xi[i] D_i`` with characteristic ``Q`` and reduces
    the result modulo the equation and its differential consequences.
    """
    if V.space != eq.space:
        raise SpaceMismatchError("field and equation live in different spaces")
    F = eq.lhs_minus_rhs()
    Q = V.characteristic()
    out = eq.space.zero()
    for m in F.jet_vars():
        dF = F.diff_jet(m)
        out = out + Q.total_derivative_multi(m) * dF
    # dependence of F on base coordinates is covered by the xi D_i F term
    for i, c in enumerate(V.xi):
        if not c.is_zero():
            out = out + c * F.total_derivative(i)
    return reduce_mod_pde(out, eq)


# ---------------------------------------------------------------------------
# bases


def kolmogorov_basis() -> Dict[str, VectorField]:
    """Essential symmetry algebra of ``u_t + x u_y = u_xx`` in the order Pt, D, K, P3, P2, P1, P0, I."""
    S = KOLMOGOROV
    t, x, y, u = S.var("t"), S.var("x"), S.var("y"), S.u()
    mk = VectorField.make
    return {
        "Pt": mk(S, [1, 0, 0], 0, "Pt"),
        "D": mk(S, [2 * t, x, 3 * y], -2 * u, "D"),
        "K": mk(S, [t * t, t * x + 3 * y, 3 * t * y], -(x * x + 2 * t) * u, "K"),
        "P3": mk(S, [0, 3 * t * t, t ** 3], 3 * (y - t * x) * u, "P3"),
        "P2": mk(S, [0, 2 * t, t * t], -x * u, "P2"),
        "P1": mk(S, [0, 1, t], 0, "P1"),
        "P0": mk(S, [0, 0, 1], 0, "P0"),
        "I": mk(S, [0, 0, 0], u, "I"),
    }


KOLMOGOROV_LABELS = ("Pt", "D", "K", "P3", "P2", "P1", "P0", "I")

# nonzero brackets [a, b] with a before b in KOLMOGOROV_LABELS, as {label: coefficient}
KOLMOGOROV_RELATIONS: Dict[Tuple[str, str], Dict[str, Fraction]] = {
    ("Pt", "D"): {"Pt": Fraction(2)},
    ("Pt", "K"): {"D": Fraction(1)},
    ("D", "K"): {"K": Fraction(2)},
    ("Pt", "P3"): {"P2": Fraction(3)},
    ("Pt", "P2"): {"P1": Fraction(2)},
    ("Pt", "P1"): {"P0": Fraction(1)},
    ("D", "P3"): {"P3": Fraction(3)},
    ("D", "P2"): {"P2": Fraction(1)},
    ("D", "P1"): {"P1": Fraction(-1)},
    ("D", "P0"): {"P0": Fraction(-3)},
    ("K", "P2"): {"P3": Fraction(-1)},
    ("K", "P1"): {"P2": Fraction(-2)},
    ("K", "P0"): {"P1": Fraction(-3)},
    ("P3", "P0"): {"I": Fraction(-3)},
    ("P2", "P1"): {"I": Fraction(1)},
}


def heat_isq_basis(mu: Number = Fraction(5, 36)) -> Dict[str, VectorField]:
    """Essential algebra of ``u_t = u_xx + mu x^-2 u``; independent of ``mu``."""
    S = HEAT_ISQ
    t, x, u = S.var("t"), S.var("x"), S.u()
    mk = VectorField.make
    q = Fraction(1, 4)
    return {
        "Pt": mk(S, [1, 0], 0, "Pt"),
        "D": mk(S, [t, x / 2], -u * q, "D"),
        "K": mk(S, [t * t, t * x], -(x * x + 2 * t) * u * q, "K"),
        "I": mk(S, [0, 0], u, "I"),
    }


def _heat_fields() -> Dict[str, VectorField]:
    S = HEAT
    z1, z2, w = S.var("z1"), S.var("z2"), S.u()
    mk = VectorField.make
    return {
        "d1": mk(S, [1, 0], 0, "d1"),
        "d2": mk(S, [0, 1], 0, "d2"),
        "dil": mk(S, [2 * z1, z2], 0, "2z1d1+z2d2"),
        "gal": mk(S, [0, 2 * z1], -z2 * w, "2z1d2-z2wdw"),
        "proj": mk(S, [4 * z1 * z1, 4 * z1 * z2], -(2 * z1 + z2 * z2) * w, "proj"),
        "I": mk(S, [0, 0], w, "wdw"),
    }


def hidden_algebra(row: str) -> List[VectorField]:
    """Maximal Lie invariance algebra of the reduced equation of codimension-one row ``row``.

    Rows: ``'1.1'``, ``'1.2d'`` (delta nonzero), ``'1.2_0'``, ``'1.3'``, ``'1.4'``,
    ``'1.5'``, ``'1.6'``, ``'1.7'``.
    """
    S = HEAT
    z1, z2, w = S.var("z1"), S.var("z2"), S.u()
    h = _heat_fields()
    if row in ("1.1", "1.3", "1.4"):
        return [h["I"]]
    if row == "1.2d":
        return [h["d1"], h["I"]]
    if row == "1.2_0":
        return [
            h["d1"],
            VectorField.make(S, [3 * z1, z2], 0, "3z1d1+z2d2"),
            VectorField.make(S, [9 * z1 * z1, 6 * z1 * z2], -(6 * z1 + z2 ** 3) * w, "9z1^2d1+..."),
            h["I"],
        ]
    if row in ("1.5", "1.6", "1.7"):
        return [h[k] for k in ("d1", "d2", "dil", "gal", "proj", "I")]
    raise KeyError(row)


def induced_algebra(row: str) -> List[VectorField]:
    """Symmetries of the reduced equation induced by the normalizer of the row's subalgebra."""
    S = HEAT
    z1, z2 = S.var("z1"), S.var("z2")
    h = _heat_fields()
    if row == "1.2_0":
        return [h["d1"], VectorField.make(S, [3 * z1, z2], 0, "3z1d1+z2d2"), h["I"]]
    if row == "1.5":
        return [h["d2"], h["gal"], h["I"]]
    if row == "1.6":
        return [h["d2"], h["dil"], h["gal"], h["I"]]
    if row == "1.7":
        return [h["d1"], h["d2"], h["dil"], h["gal"], h["I"]]
    if row in ("1.1", "1.3", "1.4"):
        return [h["I"]]
    if row == "1.2d":
        return [h["d1"], h["I"]]
    raise KeyError(row)


def reduced_fixture(row: str, delta: Number = 0) -> EvolutionPDE:
    """Reduced equation of a codimension-one row solved for ``w_1`` (only rows with polynomial form)."""
    S = HEAT
    z2, w = S.var("z2"), S.u()
    if row in ("1.5", "1.6", "1.7"):
        return EvolutionPDE("heat", S.jet((0, 2)))
    if row in ("1.2_0", "1.2d"):
        return EvolutionPDE(f"reduced_1.2({Fraction(delta)})",
                            z2 ** -1 * S.jet((0, 2)) - Fraction(delta) * z2 ** -1 * w)
    if row == "1.1":
        z1 = S.var("z1")
        return EvolutionPDE("reduced_1.1", z2 ** -1 * S.jet((0, 2)) - 3 * z1 * z2 ** -1 * w)
    raise KeyError(row)


# ---------------------------------------------------------------------------
# coordinates and structure constants


def _flatten(fields: Sequence[VectorField]) -> Tuple[List[List[Fraction]], List]:
    keys = sorted({(i, mono) for V in fields for i, c in enumerate(V.components()) for mono, _ in c.items()})
    index = {k: n for n, k in enumerate(keys)}
    vecs = []
    for V in fields:
        v = [Fraction(0)] * len(keys)
        for i, c in enumerate(V.components()):
            for mono, coef in c.items():
                v[index[(i, mono)]] = coef
        vecs.append(v)
    return vecs, keys


def coordinates(V: VectorField, basis: Sequence[VectorField]) -> Optional[List[Fraction]]:
    """Rational coefficients of ``V`` in ``basis``, or ``None`` if outside the span."""
    vecs, _ = _flatten(list(basis) + [V])
    return _exact.solve_in_span(vecs[:-1], vecs[-1])


def linear_combination(coefs: Sequence[Number], basis: Sequence[VectorField]) -> VectorField:
    out = VectorField.zero(basis[0].space)
    for c, V in zip(coefs, basis):
        if c:
            out = out + V.scale(c)
    return out


@dataclass(frozen=True)
class StructureTable:
    """Structure constants ``[e_i, e_j] = sum_k c[i][j][k] e_k``."""

    labels: Tuple[str, ...]
    constants: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]

    def __len__(self) -> int:
        return len(self.labels)

    def bracket_coords(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
        n = len(self.labels)
        out = [Fraction(0)] * n
        for i in range(n):
            if a[i] == 0:
                continue
            for j in range(n):
                if b[j] == 0:
                    continue
                f = a[i] * b[j]
                for k, c in enumerate(self.constants[i][j]):
                    if c:
                        out[k] += f * c
        return out

    def nonzero_relations(self) -> Dict[Tuple[str, str], Dict[str, Fraction]]:
        out = {}
        n = len(self.labels)
        for i in range(n):
            for j in range(i + 1, n):
                row = self.constants[i][j]
                if any(row):
                    out[(self.labels[i], self.labels[j])] = {self.labels[k]: c for k, c in enumerate(row) if c}
        return out

    def is_antisymmetric(self) -> bool:
        n = len(self.labels)
        return all(self.constants[i][j][k] == -self.constants[j][i][k]
                   for i in range(n) for j in range(n) for k in range(n))

    def jacobi_failures(self) -> List[Tuple[str, str, str]]:
        n = len(self.labels)
        unit = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
        bad = []
        for i, j, k in itertools.product(range(n), repeat=3):
            a, b, c = unit[i], unit[j], unit[k]
            s1 = self.bracket_coords(a, self.bracket_coords(b, c))
            s2 = self.bracket_coords(b, self.bracket_coords(c, a))
            s3 = self.bracket_coords(c, self.bracket_coords(a, b))
            if any(p + q + r for p, q, r in zip(s1, s2, s3)):
                bad.append((self.labels[i], self.labels[j], self.labels[k]))
        return bad

    def to_json(self) -> str:
        rel = {f"[{a},{b}]": {k: str(v) for k, v in d.items()} for (a, b), d in self.nonzero_relations().items()}
        return json.dumps({"basis": list(self.labels), "nonzero": rel}, sort_keys=True)


def structure_table(basis: Sequence[VectorField], labels: Optional[Sequence[str]] = None) -> StructureTable:
    """Exact structure constants; raises :class:`NotClosedError` when a bracket leaves the span."""
    labels = tuple(labels) if labels is not None else tuple(V.label or f"e{i}" for i, V in enumerate(basis))
    n = len(basis)
    zero = tuple(Fraction(0) for _ in range(n))
    table = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            br = bracket(basis[i], basis[j])
            co = coordinates(br, basis)
            if co is None:
                raise NotClosedError((labels[i], labels[j]))
            table[i][j] = tuple(co)
            table[j][i] = tuple(-c for c in co)
    return StructureTable(labels, tuple(tuple(r) for r in table))


# ---------------------------------------------------------------------------
# representations and the Levi action


def rep_matrix(action: str, n: int) -> List[List[Fraction]]:
    """``(n+1) x (n+1)`` matrices of the standard irreducible sl(2) representation (1-based formulas)."""
    if not 0 <= n <= 8:
        raise ValueError("n must lie in 0..8")
    size = n + 1
    M = [[Fraction(0)] * size for _ in range(size)]
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if action == "D" and i == j:
                M[i - 1][j - 1] = Fraction(n - 2 * i + 2)
            elif action == "K" and j == i - 1:
                M[i - 1][j - 1] = Fraction(i - 1)
            elif action == "Pt" and j == i + 1:
                M[i - 1][j - 1] = Fraction(n - i + 1)
    if action not in ("D", "K", "Pt"):
        raise ValueError(f"unknown action {action!r}")
    return M


def ad_matrix(X: VectorField, basis: Sequence[VectorField]) -> List[List[Fraction]]:
    """Row convention: entry ``(i, j)`` is the coefficient of ``basis[j]`` in ``[X, basis[i]]``."""
    rows = []
    for B in basis:
        co = coordinates(bracket(X, B), basis)
        if co is None:
            raise NotClosedError((X.label, B.label))
        rows.append(co)
    return rows


def block_diag(*blocks: List[List[Fraction]]) -> List[List[Fraction]]:
    size = sum(len(b) for b in blocks)
    out = [[Fraction(0)] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, v in enumerate(r):
                out[off + i][off + j] = v
        off += len(b)
    return out


@dataclass
class LeviReport:
    passed: bool
    mismatches: List[Tuple[str, int, int, Fraction, Fraction]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "mismatches": [
                {"action": a, "row": i + 1, "col": j + 1, "found": str(f), "expected": str(e)}
                for a, i, j, f, e in self.mismatches
            ],
        }


def compare_levi_matrices(found: Mapping[str, List[List[Fraction]]]) -> LeviReport:
    """Compare ad-matrices keyed by ``Pt``, ``D``, ``K`` with ``rho_3 (+) rho_0``."""
    mism = []
    for act in ("Pt", "D", "K"):
        exp = block_diag(rep_matrix(act, 3), rep_matrix(act, 0))
        got = found[act]
        for i, row in enumerate(exp):
            for j, e in enumerate(row):
                if got[i][j] != e:
                    mism.append((act, i, j, got[i][j], e))
    return LeviReport(not mism, mism)


def verify_levi_action(fbasis: Mapping[str, VectorField], rbasis: Sequence[VectorField]) -> LeviReport:
    """Check that ``ad`` of the Levi factor on the radical is ``rho_3 (+) rho_0`` in the given basis."""
    found = {a: ad_matrix(fbasis[a], rbasis) for a in ("Pt", "D", "K")}
    return compare_levi_matrices(found)


# ---------------------------------------------------------------------------
# subalgebras


@dataclass(frozen=True)
class Subalgebra:
    label: str
    basis: Tuple[VectorField, ...]
    params: Tuple[Tuple[str, Fraction], ...] = ()

    @classmethod
    def of(cls, label: str, basis: Sequence[VectorField], **params: Number) -> "Subalgebra":
        return cls(label, tuple(basis), tuple(sorted((k, Fraction(v)) for k, v in params.items())))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_independent(self) -> bool:
        vecs, _ = _flatten(self.basis)
        return _exact.rank(vecs) == len(self.basis)


def closure_check(s: Subalgebra) -> bool:
    """True iff every pairwise bracket lies in the rational span of the basis."""
    for A, B in itertools.combinations(s.basis, 2):
        if coordinates(bracket(A, B), s.basis) is None:
            return False
    return True


def normalizer(s: Subalgebra, ambient: Sequence[VectorField]) -> Subalgebra:
    """All ``X`` in span(ambient) with ``[X, s]`` contained in ``s``.

    Works in ambient coordinates through the structure table.
    """
    table = structure_table(ambient)
    n = len(ambient)
    scoords = []
    for V in s.basis:
        co = coordinates(V, ambient)
        if co is None:
            raise ValueError(f"{V.label or V} is not in the ambient span")
        scoords.append(co)
    m = len(scoords)
    unit = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    # unknowns: c_0..c_{n-1} for X, then d_{j,l} for [X, s_j] = sum_l d_{jl} s_l
    nunk = n + m * m
    rows = []
    for j, sj in enumerate(scoords):
        cols = [table.bracket_coords(unit[k], sj) for k in range(n)]
        for comp in range(n):
            row = [cols[k][comp] for k in range(n)] + [Fraction(0)] * (m * m)
            for l in range(m):
                row[n + j * m + l] = -scoords[l][comp]
            rows.append(row)
    null = _exact.nullspace(rows, nunk)
    xs = [v[:n] for v in null]
    red, _ = _exact.rref(xs)
    basis = [linear_combination(r, ambient) for r in red]
    return Subalgebra(f"N({s.label})", tuple(basis))


def same_span(a: Sequence[VectorField], b: Sequence[VectorField]) -> bool:
    va, _ = _flatten(list(a) + list(b))
    ra = _exact.rank(va[: len(a)])
    rb = _exact.rank(va[len(a):])
    return ra == rb == _exact.rank(va)


def _kb() -> Dict[str, VectorField]:
    return kolmogorov_basis()


def one_dim_subalgebras(delta: Number = 1, nu: Number = Fraction(1, 2), mu: Number = Fraction(1, 3),
                       eps: int = 1) -> Dict[str, Subalgebra]:
    """One-dimensional inequivalent subalgebras with representative parameter values."""
    B = _kb()
    return {
        "1.1": Subalgebra.of("s1.1", [B["Pt"] + B["P3"]]),
        "1.2": Subalgebra.of("s1.2", [B["Pt"] + B["I"].scale(delta)], delta=delta),
        "1.3": Subalgebra.of("s1.3", [B["D"] + B["I"].scale(nu)], nu=nu),
        "1.4": Subalgebra.of("s1.4", [B["Pt"] + B["K"] + B["I"].scale(mu)], mu=mu),
        "1.5": Subalgebra.of("s1.5", [B["P2"] + B["P0"].scale(eps)], eps=eps),
        "1.6": Subalgebra.of("s1.6", [B["P1"]]),
        "1.7": Subalgebra.of("s1.7", [B["P0"]]),
        "1.8": Subalgebra.of("s1.8", [B["I"]]),
    }


def two_dim_subalgebras(mu: Number = Fraction(1, 3), delta: Number = 1, eps: int = 1) -> Dict[str, Subalgebra]:
    """Two-dimensional inequivalent subalgebras with representative parameter values."""
    B = _kb()
    I = B["I"]
    return {
        "2.1": Subalgebra.of("s2.1", [B["Pt"], B["D"] + I.scale(mu)], mu=mu),
        "2.2": Subalgebra.of("s2.2", [B["Pt"] + I.scale(delta), B["P0"]], delta=delta),
        "2.3": Subalgebra.of("s2.3", [B["Pt"], B["P0"] + I]),
        "2.4": Subalgebra.of("s2.4", [B["D"] + I.scale(mu), B["P1"]], mu=mu),
        "2.5": Subalgebra.of("s2.5", [B["D"] + I.scale(mu), B["P0"]], mu=mu),
        "2.6": Subalgebra.of("s2.6", [B["P0"], B["P1"]]),
        "2.7": Subalgebra.of("s2.7", [B["P0"], B["P2"]]),
        "2.8": Subalgebra.of("s2.8", [B["P1"], B["P3"] + B["P0"].scale(eps)], eps=eps),
        "2.9": Subalgebra.of("s2.9", [B["Pt"] + B["P3"], I]),
        "2.10": Subalgebra.of("s2.10", [B["Pt"], I]),
        "2.11": Subalgebra.of("s2.11", [B["D"], I]),
        "2.12": Subalgebra.of("s2.12", [B["Pt"] + B["K"], I]),
        "2.13": Subalgebra.of("s2.13", [B["P2"] + B["P0"].scale(eps), I], eps=eps),
        "2.14": Subalgebra.of("s2.14", [B["P1"], I]),
        "2.15": Subalgebra.of("s2.15", [B["P0"], I]),
    }


def heat_isq_subalgebras(delta: Number = 1, nu: Number = Fraction(1, 2)) -> Dict[str, Subalgebra]:
    """Subalgebra list for the inverse-square-potential heat equation."""
    B = heat_isq_basis()
    I = B["I"]
    return {
        "a1.1": Subalgebra.of("a1.1", [B["Pt"] + I.scale(delta)], delta=delta),
        "a1.2": Subalgebra.of("a1.2", [B["D"] + I.scale(nu)], nu=nu),
        "a1.3": Subalgebra.of("a1.3", [B["Pt"] + B["K"] + I.scale(2 * Fraction(nu))], nu=nu),
        "a1.4": Subalgebra.of("a1.4", [I]),
        "a2.1": Subalgebra.of("a2.1", [B["Pt"], B["D"] + I.scale(nu)], nu=nu),
        "a2.2": Subalgebra.of("a2.2", [B["Pt"], I]),
        "a2.3": Subalgebra.of("a2.3", [B["D"], I]),
        "a2.4": Subalgebra.of("a2.4", [B["Pt"] + B["K"], I]),
        "a3.1": Subalgebra.of("a3.1", [B["Pt"], B["D"], B["K"]]),
        "a3.2": Subalgebra.of("a3.2", [B["Pt"], B["D"], I]),
        "a4": Subalgebra.of("a4", [B["Pt"], B["D"], B["K"], I]),
    }


def normalizer_expectations(eps: int = 1) -> Dict[str, Tuple[Subalgebra, List[VectorField]]]:
    """Codimension-one rows paired with their expected normalizers in the essential algebra."""
    B = _kb()
    s = one_dim_subalgebras(eps=eps)
    s0 = Subalgebra.of("s1.2_0", [B["Pt"]], delta=0)
    return {
        "1.1": (s["1.1"], [B["Pt"] + B["P3"], B["I"]]),
        "1.2_0": (s0, [B["Pt"], B["D"], B["P0"], B["I"]]),
        "1.2d": (s["1.2"], [B["Pt"], B["P0"], B["I"]]),
        "1.3": (s["1.3"], [B["D"], B["I"]]),
        "1.4": (s["1.4"], [B["Pt"] + B["K"], B["I"]]),
        "1.5": (s["1.5"], [B["P2"], B["P0"], B["P3"] - B["P1"].scale(3 * eps), B["I"]]),
        "1.6": (s["1.6"], [B["D"], B["P3"], B["P1"], B["P0"], B["I"]]),
        "1.7": (s["1.7"], [B["Pt"], B["D"], B["P2"], B["P1"], B["P0"], B["I"]]),
    }


# ---------------------------------------------------------------------------
# binary cubics


@dataclass(frozen=True)
class BinaryCubic:
    """Coefficients of ``a3 P3 + 3 a2 P2 + 3 a1 P1 + a0 P0``."""

    a0: object
    a1: object
    a2: object
    a3: object

    @classmethod
    def from_field(cls, V: VectorField) -> "BinaryCubic":
        B = _kb()
        co = coordinates(V, [B["P3"], B["P2"], B["P1"], B["P0"], B["I"]])
        if co is None:
            raise ValueError("field is not in the radical")
        return cls(co[3], co[2] / 3, co[1] / 3, co[0])


def discr(c: BinaryCubic):
    """Discriminant-type invariant of the cubic; works over any commutative ring of coefficients."""
    a0, a1, a2, a3 = c.a0, c.a1, c.a2, c.a3
    return (a0 * a0 * a3 * a3 - 6 * a0 * a1 * a2 * a3 + 4 * a0 * a2 ** 3
            - 3 * a1 * a1 * a2 * a2 + 4 * a1 ** 3 * a3)


@dataclass(frozen=True)
class QuarticInvariants:
    p: object
    q: object
    r: object
    delta: object
    L: object


def depressed_quartic(alpha, eps: int) -> Tuple[object, object, object]:
    e = Fraction(eps)
    p = -alpha * alpha * Fraction(1, 24) + 2 * e
    q = e * alpha ** 3 * Fraction(1, 216) + alpha * Fraction(2, 3)
    r = -alpha ** 4 * Fraction(1, 6912) + e * alpha * alpha * Fraction(1, 72) - Fraction(1, 3)
    return p, q, r


def quartic_invariants(alpha, eps: int) -> QuarticInvariants:
    """``p, q, r`` of the depressed quartic and its invariants ``delta`` and ``L``.

    ``alpha`` may be a rational or a :class:`LaurentPoly` in a symbol, which
    turns the closed-form identities into exact polynomial identities.
    """
    if eps not in (-1, 1):
        raise ValueError("eps must be -1 or 1")
    p, q, r = depressed_quartic(alpha, eps)
    delta = (256 * r ** 3 - 128 * p * p * r * r + 144 * p * q * q * r + 16 * p ** 4 * r
             - 27 * q ** 4 - 4 * p ** 3 * q * q)
    L = 8 * p * r - 9 * q * q - 2 * p ** 3
    return QuarticInvariants(p, q, r, delta, L)
