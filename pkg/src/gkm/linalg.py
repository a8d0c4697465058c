"""Small exact linear algebra kernel: integer ranks, rational RREF,
kernels, and Hermite normal form.  Rows are plain Python lists; entries are
``int`` or ``fractions.Fraction``.  Everything is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def _strip_gcd(row: list[int]) -> None:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return
    if g > 1:
        for i, x in enumerate(row):
            row[i] = x // g


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix, by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, len(m)):
            q = m[i][col]
            if q == 0:
                continue
            row = m[i]
            top = m[rank]
            for j in range(col, ncols):
                row[j] = p * row[j] - q * top[j]
            _strip_gcd(row)
        rank += 1
        if rank == len(m):
            break
    return rank


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q.

    Returns (nonzero rows in RREF, pivot column indices).  Column order is
    taken as given, so callers control the pivoting preference.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        if p != 1:
            m[rank] = [x / p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                q = m[i][col]
                m[i] = [a - q * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return m[:rank], pivots


def reduce_against(vec: Sequence, rref_rows: Sequence[Sequence[Fraction]],
                   pivots: Sequence[int]) -> list[Fraction]:
    """Subtract the projection of vec onto the row space (rows in RREF)."""
    v = [Fraction(x) for x in vec]
    for row, p in zip(rref_rows, pivots):
        c = v[p]
        if c != 0:
            for j in range(len(v)):
                v[j] -= c * row[j]
    return v


def kernel_basis(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel {x : M x = 0} of the matrix with given rows."""
    rr, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rr, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def hnf_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form: basis of the lattice spanned by rows.

    Returns echelon rows with positive pivots, entries above each pivot
    reduced into [0, pivot).
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return []
    ncols = len(m[0])
    basis: list[list[int]] = []
    for col in range(ncols):
        while True:
            nz = [i for i, row in enumerate(m) if row[col] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(m[i][col]))
            a = m[nz[0]]
            for i in nz[1:]:
                q = m[i][col] // a[col]
                m[i] = [x - q * y for x, y in zip(m[i], a)]
            m = [row for row in m if any(row)]
        nz = [i for i, row in enumerate(m) if row[col] != 0]
        if nz:
            piv = m.pop(nz[0])
            if piv[col] < 0:
                piv = [-x for x in piv]
            basis.append(piv)
    for i in range(len(basis) - 1, -1, -1):
        p = next(j for j, x in enumerate(basis[i]) if x != 0)
        for k in range(i):
            q = basis[k][p] // basis[i][p]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[i])]
    return basis


def lattice_coords(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> list[int] | None:
    """Integer coordinates of vec in a HNF lattice basis, or None."""
    v = list(vec)
    coords = []
    for row in basis:
        p = next(j for j, x in enumerate(row) if x != 0)
        if v[p] % row[p] != 0:
            return None
        c = v[p] // row[p]
        coords.append(c)
        v = [x - c * y for x, y in zip(v, row)]
    if any(v):
        return None
    return coords
