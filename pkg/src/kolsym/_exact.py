"""Small exact linear algebra over the rationals (row reduction only)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[Fraction]]


def rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(v) for v in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def solve_in_span(columns: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """Coefficients ``c`` with ``sum c_j columns[j] == target``, or ``None``."""
    n = len(columns)
    if n == 0:
        return [] if all(v == 0 for v in target) else None
    rows = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(len(target))]
    red, piv = rref(rows)
    if n in piv:
        return None
    sol = [Fraction(0)] * n
    for row, c in zip(red, piv):
        sol[c] = row[n]
    return sol


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of ``{v : rows v = 0}``."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis
