"""Exact linear algebra over the rationals (``fractions.Fraction``).

Matrices are lists of rows. Integer input stays integer where the
algorithm allows it (Bareiss elimination for rank/determinant).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[Fraction]]
_ZERO = Fraction(0)
Vector = list[Fraction]


def as_fractions(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def shifted_adjacency(g, lam) -> list[list]:
    """Rows of ``A_G - lam*I``; entries are ints when ``lam`` is an int."""
    rows = g.adjacency_rows()
    for i in range(g.n):
        rows[i][i] = rows[i][i] - lam
    return rows


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    nr, nc = len(a), len(a[0])
    rank = 0
    prev = 1
    for c in range(nc):
        piv = next((r for r in range(rank, nr) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][c]
        for r in range(rank + 1, nr):
            f = a[r][c]
            row_r, row_p = a[r], a[rank]
            for k in range(c + 1, nc):
                row_r[k] = (p * row_r[k] - f * row_p[k]) // prev
            row_r[c] = 0
        prev = p
        rank += 1
        if rank == nr:
            break
    return rank


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        p = a[c][c]
        for r in range(c + 1, n):
            f = a[r][c]
            for k in range(c + 1, n):
                a[r][k] = (p * a[r][k] - f * a[c][k]) // prev
            a[r][c] = 0
        prev = p
    return sign * a[n - 1][n - 1]


def rank(rows: Sequence[Sequence]) -> int:
    if all(isinstance(x, int) for r in rows for x in r):
        return bareiss_rank(rows)
    return len(rref(rows)[1])


def det(rows: Sequence[Sequence]) -> Fraction:
    if all(isinstance(x, int) for r in rows for x in r):
        return Fraction(bareiss_det(rows))
    a = as_fractions(rows)
    n = len(a)
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            out = -out
        p = a[c][c]
        out *= p
        for r in range(c + 1, n):
            f = a[r][c] / p
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return out


def _integer_row(row) -> list[int]:
    if all(type(x) is int for x in row):
        return list(row)
    fr = [Fraction(x) for x in row]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    return [int(x * den) for x in fr]


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form; pivots are searched only in the first
    ``ncols`` columns (so an augmented column can be carried along).

    Rows are scaled to integers and eliminated fraction-free (row scaling
    leaves the RREF unchanged); division happens once per pivot row.
    """
    a = [_integer_row(row) for row in rows]
    if not a:
        return [], []
    nr, nc = len(a), len(a[0])
    lim = nc if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(lim):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        row_r = a[r]
        p = row_r[c]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                new = [p * x - f * y for x, y in zip(a[i], row_r)]
                d = gcd(*new)
                a[i] = [x // d for x in new] if d > 1 else new
        pivots.append(c)
        r += 1
        if r == nr:
            break
    out = [[Fraction(x) if x else _ZERO for x in row] for row in a]
    for i, c in enumerate(pivots):
        p = a[i][c]
        out[i] = [Fraction(x, p) if x else _ZERO for x in a[i]]
    return out, pivots


def nullspace_from_rref(r: Matrix, pivots: list[int], ncols: int) -> list[Vector]:
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][f]
        basis.append(v)
    return basis


def nullspace(rows: Sequence[Sequence]) -> list[Vector]:
    ncols = len(rows[0]) if rows else 0
    r, piv = rref(rows)
    return nullspace_from_rref(r, piv, ncols)


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Vector | None, list[Vector], list[int]]:
    """Solve ``M x = b``.

    Returns ``(particular, nullspace_basis, pivot_columns)``; the particular
    solution sets free variables to 0 and is ``None`` when inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    r, piv = rref(aug, ncols)
    for i in range(len(piv), len(r)):
        if r[i][ncols] != 0:
            return None, nullspace_from_rref(r, piv, ncols), piv
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(piv):
        x[pc] = r[i][ncols]
    return x, nullspace_from_rref(r, piv, ncols), piv


def inverse(rows: Sequence[Sequence]) -> Matrix:
    n = len(rows)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(rows)]
    r, piv = rref(aug, n)
    if len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in r]


def matvec(rows: Sequence[Sequence], x: Sequence) -> Vector:
    return [sum((a * b for a, b in zip(row, x) if a), Fraction(0)) for row in rows]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col) if x), Fraction(0)) for col in bt] for row in a]


def is_integral(x: Fraction) -> bool:
    return Fraction(x).denominator == 1
