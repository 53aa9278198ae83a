from fractions import Fraction

import numpy as np
import pytest

from skewpencil import CanonicalBlock, SkewPair, make_block
from skewpencil.exact import (
    dense_fraction_rank,
    gaussian_columns_rank,
    pair_to_gaussian_ints,
    sparse_int_rank,
)

from helpers import svd_rank


def rows_from_dense(M):
    return [{j: int(v) for j, v in enumerate(row) if v} for row in M]


def test_sparse_rank_trivial():
    assert sparse_int_rank([]) == 0
    assert sparse_int_rank([{}, {}]) == 0
    assert sparse_int_rank([{0: 1}]) == 1
    assert sparse_int_rank([{0: 2, 1: 4}, {0: 1, 1: 2}]) == 1


def test_sparse_rank_vs_dense_fraction():
    rng = np.random.default_rng(5)
    for _ in range(30):
        m, n = rng.integers(1, 9, size=2)
        r = int(rng.integers(0, min(m, n) + 1))
        U = rng.integers(-4, 5, size=(m, r))
        V = rng.integers(-4, 5, size=(r, n))
        M = U @ V
        expected = dense_fraction_rank([[Fraction(int(v)) for v in row] for row in M])
        assert sparse_int_rank(rows_from_dense(M)) == expected


def test_sparse_rank_vs_svd():
    rng = np.random.default_rng(17)
    for _ in range(20):
        M = rng.integers(-3, 4, size=(7, 9))
        assert sparse_int_rank(rows_from_dense(M)) == svd_rank(M.astype(complex))


def test_gaussian_columns_rank_real():
    cols = [{0: (1, 0), 1: (2, 0)}, {0: (2, 0), 1: (4, 0)}, {2: (1, 0)}]
    assert gaussian_columns_rank(cols) == 2


def test_gaussian_columns_rank_complex():
    # [1, i] and [i, -1] are parallel over C, independent over R
    cols = [{0: (1, 0), 1: (0, 1)}, {0: (0, 1), 1: (-1, 0)}]
    assert gaussian_columns_rank(cols) == 1
    cols.append({0: (1, 0), 1: (0, -1)})
    assert gaussian_columns_rank(cols) == 2


def test_gaussian_columns_rank_vs_svd():
    rng = np.random.default_rng(23)
    for _ in range(20):
        m, n = int(rng.integers(2, 7)), int(rng.integers(2, 7))
        r = int(rng.integers(0, min(m, n) + 1))
        U = rng.integers(-3, 4, size=(m, r)) + 1j * rng.integers(-3, 4, size=(m, r))
        V = rng.integers(-3, 4, size=(r, n)) + 1j * rng.integers(-3, 4, size=(r, n))
        M = U @ V
        cols = []
        for j in range(n):
            col = {}
            for i in range(m):
                v = M[i, j]
                if v != 0:
                    col[i] = (int(v.real), int(v.imag))
            cols.append(col)
        assert gaussian_columns_rank(cols) == svd_rank(M)


def test_pair_to_gaussian_ints_integer_pair():
    pair = make_block(CanonicalBlock("H", 2, 1j))
    Are, Aim, Bre, Bim = pair_to_gaussian_ints(pair)
    assert np.array_equal(Are.astype(float), pair.A.real)
    assert np.array_equal(Bim.astype(float), pair.B.imag)


def test_pair_to_gaussian_ints_scales_rationals():
    pair = make_block(CanonicalBlock("H", 1, 0.5))
    Are, Aim, Bre, Bim = pair_to_gaussian_ints(pair)
    # common denominator 2: A doubles, B becomes integral
    assert Are[0, 1] == 2 and Bre[0, 1] == 1
    assert Aim[0, 1] == 0 and Bim[0, 1] == 0


def test_dense_fraction_rank_basic():
    M = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert dense_fraction_rank(M) == 1
    assert dense_fraction_rank([]) == 0
