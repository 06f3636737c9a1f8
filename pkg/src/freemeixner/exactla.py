"""Small exact linear algebra over Fractions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


@dataclass
class PsdReport:
    positive: bool
    rank: int
    pivots: list = field(default_factory=list)
    witness: int | None = None  # index of the offending pivot when not PSD
    reason: str = ""


def ldl_psd(a: Sequence[Sequence[Fraction]]) -> PsdReport:
    """Decide positive semidefiniteness by exact symmetric elimination.

    No pivoting is needed: for a PSD matrix a zero diagonal entry forces its
    whole row to vanish, so a zero pivot with a nonzero row (or a negative
    pivot) is a certificate of indefiniteness.
    """
    n = len(a)
    m = [list(map(Fraction, row)) for row in a]
    for i in range(n):
        for j in range(i):
            if m[i][j] != m[j][i]:
                raise ValueError(f"matrix not symmetric at ({i}, {j})")
    pivots = []
    rank = 0
    for k in range(n):
        p = m[k][k]
        pivots.append(p)
        if p < 0:
            return PsdReport(False, rank, pivots, k, f"negative pivot {p} at {k}")
        if p == 0:
            if any(m[k][j] for j in range(k + 1, n)):
                return PsdReport(False, rank, pivots, k, f"zero pivot with nonzero row at {k}")
            continue
        rank += 1
        row = m[k]
        for i in range(k + 1, n):
            f = m[i][k]
            if not f:
                continue
            f = f / p
            ri = m[i]
            for j in range(k + 1, n):
                if row[j]:
                    ri[j] -= f * row[j]
    return PsdReport(True, rank, pivots)


def det(a: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(a)
    m = [list(map(Fraction, row)) for row in a]
    sign = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    out = sign
    for k in range(n):
        out *= m[k][k]
    return out


def nullspace(a: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Basis of the right kernel via reduced row echelon form."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [list(map(Fraction, row)) for row in a]
    pivot_cols = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis
