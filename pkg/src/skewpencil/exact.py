"""Exact rank computation over the Gaussian rationals.

Rank decisions for the miniversality check are discontinuous, so the
default verification backend avoids floating point entirely.  Matrices
with Gaussian-rational entries are scaled to Gaussian integers (scaling
does not change rank), complex columns are realified when an imaginary
part is present (doubling the rank), and the rank is computed by sparse
fraction-free elimination over the integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .core import SkewPair


def sparse_int_rank(rows: list[dict[int, int]]) -> int:
    """Rank of a sparse integer matrix given as row dictionaries.

    Exact: rows are combined by integer cross-multiplication and reduced by
    their gcd, so no rounding ever occurs.  Pivots prefer unit entries in
    short rows to limit fill-in and coefficient growth.
    """
    active = [dict(r) for r in rows if r]
    rank = 0
    while active:
        col_count: dict[int, int] = {}
        for row in active:
            for c in row:
                col_count[c] = col_count.get(c, 0) + 1
        pi = min(range(len(active)), key=lambda k: len(active[k]))
        pivot = active.pop(pi)
        pc = min(pivot, key=lambda c: (abs(pivot[c]) != 1, col_count[c], abs(pivot[c])))
        pv = pivot[pc]
        rank += 1
        remaining = []
        for row in active:
            v = row.pop(pc, None)
            if v is None:
                if row:
                    remaining.append(row)
                continue
            if pv == 1:
                a, b = 1, -v
            elif pv == -1:
                a, b = 1, v
            else:
                g = gcd(pv, v)
                a, b = pv // g, -(v // g)
            new: dict[int, int] = {}
            if a == 1:
                new.update(row)
            else:
                for c, w in row.items():
                    new[c] = a * w
            for c, w in pivot.items():
                if c == pc:
                    continue
                nv = new.get(c, 0) + b * w
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            if new:
                g = 0
                for w in new.values():
                    g = gcd(g, w)
                    if g == 1:
                        break
                if g > 1:
                    for c in new:
                        new[c] //= g
                remaining.append(new)
        active = remaining
    return rank


def gaussian_columns_rank(columns: list[dict[int, tuple[int, int]]]) -> int:
    """Rank over the complex field of Gaussian-integer columns.

    Each column maps a coordinate to an (re, im) integer pair.  Real inputs
    are ranked directly; otherwise each column v contributes the real
    vectors v and i*v on doubled coordinates, and the real rank is twice
    the complex rank.
    """
    has_imag = any(im for col in columns for (_, im) in col.values())
    if not has_imag:
        rows = [{c: re for c, (re, _) in col.items() if re} for col in columns]
        return sparse_int_rank(rows)
    rows = []
    for col in columns:
        r1: dict[int, int] = {}
        r2: dict[int, int] = {}
        for c, (re, im) in col.items():
            if re:
                r1[2 * c] = re
                r2[2 * c + 1] = re
            if im:
                r1[2 * c + 1] = im
                r2[2 * c] = -im
        if r1:
            rows.append(r1)
        if r2:
            rows.append(r2)
    r = sparse_int_rank(rows)
    if r % 2:
        raise AssertionError("realified rank must be even")
    return r // 2


def dense_fraction_rank(M: list[list[Fraction]]) -> int:
    """Plain Gaussian elimination over the rationals (cross-check oracle)."""
    M = [list(row) for row in M]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    rank, prow = 0, 0
    for c in range(ncols):
        piv = None
        for r in range(prow, nrows):
            if M[r][c] != 0:
                piv = r
                break
        if piv is None:
            continue
        M[prow], M[piv] = M[piv], M[prow]
        pv = M[prow][c]
        for r in range(prow + 1, nrows):
            if M[r][c] != 0:
                f = M[r][c] / pv
                for k in range(c, ncols):
                    M[r][k] -= f * M[prow][k]
        rank += 1
        prow += 1
        if prow == nrows:
            break
    return rank


def pair_to_gaussian_ints(pair: SkewPair) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Scale a pair with (binary-exact) rational entries to Gaussian integers.

    Returns object arrays of python ints (Are, Aim, Bre, Bim) equal to the
    original entries times a common positive denominator.  Scaling a pair
    scales its tangent map, leaving every rank unchanged.
    """
    parts = []
    denom = 1
    for M in (pair.A, pair.B):
        re = [[Fraction(x) for x in row] for row in M.real.tolist()]
        im = [[Fraction(x) for x in row] for row in M.imag.tolist()]
        parts.append((re, im))
        for grid in (re, im):
            for row in grid:
                for f in row:
                    denom = lcm(denom, f.denominator)
    out = []
    for re, im in parts:
        for grid in (re, im):
            n = len(grid)
            arr = np.empty((n, n), dtype=object)
            for i in range(n):
                for j in range(n):
                    f = grid[i][j] * denom
                    arr[i, j] = int(f)
            out.append(arr)
    return out[0], out[1], out[2], out[3]
