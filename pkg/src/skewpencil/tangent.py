"""Tangent space of the congruence action and the miniversality oracle.

The tangent space at a pair (A, B) is T(A, B) = {(C^T A + A C, C^T B + B C)}
over all n-by-n matrices C.  A star pattern is a miniversal deformation of
the pair exactly when the space of skew pairs splits as the direct sum of
T(A, B) and the span of the star directions; this module computes the
explicit tangent matrix, checks the splitting (exactly, by default), and
projects arbitrary skew pairs onto their unique pattern-form coset
representative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CanonicalStructure, SkewPair, make_structure_pair
from .exact import gaussian_columns_rank, pair_to_gaussian_ints
from .pattern import LAMBDA_TOL, StarPattern, assemble

#: singular values below this fraction of the largest are treated as zero
FLOAT_RANK_RTOL = 1e-9


class DirectSumError(ValueError):
    """Raised when an operation requires a direct-sum pattern and it fails."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def upper_coords(n: int) -> list[tuple[int, int]]:
    """Strictly-upper positions in row-major order; the coordinate basis."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def pair_coords(pair: SkewPair) -> np.ndarray:
    """Stacked strict-upper coordinates of a skew pair, A part first."""
    n = pair.n
    iu, ju = np.triu_indices(n, 1)
    return np.concatenate([pair.A[iu, ju], pair.B[iu, ju]])


def pair_from_coords(n: int, coords: np.ndarray) -> SkewPair:
    """Inverse of :func:`pair_coords`."""
    m = n * (n - 1) // 2
    iu, ju = np.triu_indices(n, 1)
    A = np.zeros((n, n), dtype=complex)
    B = np.zeros((n, n), dtype=complex)
    A[iu, ju] = coords[:m]
    B[iu, ju] = coords[m:]
    return SkewPair(A - A.T, B - B.T)


@dataclass(frozen=True)
class TangentMap:
    """Matrix of C |-> (C^T A + A C, C^T B + B C) in stacked upper coordinates.

    Column i*n + j is the image of the elementary matrix E_ij; rows run over
    the strict upper triangles of the A part then the B part, so the matrix
    is n(n-1) by n^2 and its column span is T(A, B).
    """

    n: int
    matrix: np.ndarray

    @property
    def ambient(self) -> int:
        return self.n * (self.n - 1)


def tangent_map(pair: SkewPair) -> TangentMap:
    n = pair.n
    iu, ju = np.triu_indices(n, 1)
    m = iu.size
    T = np.zeros((2 * m, n * n), dtype=complex)
    for M, off in ((pair.A, 0), (pair.B, m)):
        # image entry (p, q) of column (i, j) is delta_pj M[i, q] + M[p, i] delta_qj
        T4 = np.zeros((n, n, n, n), dtype=complex)
        for j in range(n):
            T4[j, :, :, j] += M.T
            T4[:, j, :, j] += M
        T[off:off + m] = T4[iu, ju].reshape(m, n * n)
    return TangentMap(n, T)


def float_rank(M: np.ndarray, rtol: float = FLOAT_RANK_RTOL) -> int:
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def _star_coord_indices(pattern: StarPattern) -> list[int]:
    """Coordinate index of each independent star, A block first."""
    n = pattern.n
    uidx = {c: k for k, c in enumerate(upper_coords(n))}
    m = n * (n - 1) // 2
    return sorted(which * m + uidx[(i, j)] for which, i, j in pattern.independent_stars())


def _exact_tangent_columns(pair: SkewPair) -> list[dict[int, tuple[int, int]]]:
    """Tangent columns over scaled Gaussian integers, as sparse coord dicts."""
    Are, Aim, Bre, Bim = pair_to_gaussian_ints(pair)
    n = pair.n
    uidx = {c: k for k, c in enumerate(upper_coords(n))}
    m = n * (n - 1) // 2
    cols = []
    for i in range(n):
        for j in range(n):
            col: dict[int, tuple[int, int]] = {}
            for re, im, off in ((Are, Aim, 0), (Bre, Bim, m)):
                for q in range(j + 1, n):
                    vr, vi = int(re[i, q]), int(im[i, q])
                    if vr or vi:
                        k = off + uidx[(j, q)]
                        old = col.get(k, (0, 0))
                        col[k] = (old[0] + vr, old[1] + vi)
                for p in range(j):
                    vr, vi = int(re[p, i]), int(im[p, i])
                    if vr or vi:
                        k = off + uidx[(p, j)]
                        old = col.get(k, (0, 0))
                        col[k] = (old[0] + vr, old[1] + vi)
            col = {k: v for k, v in col.items() if v != (0, 0)}
            if col:
                cols.append(col)
    return cols


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of the direct-sum check T(A, B) (+) pattern span."""

    rank_t: int
    params_p: int
    ambient: int
    intersection_dim: int

    @property
    def direct_sum_ok(self) -> bool:
        return self.rank_t + self.params_p == self.ambient and self.intersection_dim == 0

    def to_json(self) -> dict:
        return {
            "rank_T": self.rank_t,
            "params_p": self.params_p,
            "ambient": self.ambient,
            "intersection_dim": self.intersection_dim,
            "direct_sum_ok": self.direct_sum_ok,
        }


def verify_direct_sum(pair: SkewPair, pattern: StarPattern, backend: str = "exact") -> DecompositionReport:
    """Check that skew-pair space = T(pair) (+) span of the star directions.

    ``backend="exact"`` ranks over the Gaussian rationals and is the
    decision procedure; ``"float"`` uses SVD with a relative threshold.
    """
    if pattern.n != pair.n:
        raise ValueError("pattern dimension does not match pair")
    n = pair.n
    ambient = n * (n - 1)
    p = pattern.params
    star_idx = _star_coord_indices(pattern)
    if backend == "exact":
        cols = _exact_tangent_columns(pair)
        rank_t = gaussian_columns_rank(cols)
        star_cols: list[dict[int, tuple[int, int]]] = [{k: (1, 0)} for k in star_idx]
        rank_td = gaussian_columns_rank(cols + star_cols)
    elif backend == "float":
        T = tangent_map(pair).matrix
        D = np.zeros((ambient, p), dtype=complex)
        for c, k in enumerate(star_idx):
            D[k, c] = 1.0
        rank_t = float_rank(T)
        rank_td = float_rank(np.hstack([T, D]))
    else:
        raise ValueError(f"unknown backend {backend!r}")
    intersection = rank_t + p - rank_td
    return DecompositionReport(rank_t, p, ambient, intersection)


@dataclass(frozen=True)
class PairwiseReport:
    """Direct-sum report for the substructure made of blocks i and (maybe) j."""

    i: int
    j: int
    report: DecompositionReport

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "report": self.report.to_json()}


def verify_pairwise(
    structure: CanonicalStructure,
    backend: str = "exact",
    lambda_tol: float = LAMBDA_TOL,
) -> list[PairwiseReport]:
    """Blockwise miniversality: each single block and each pair of blocks.

    The full pattern is miniversal exactly when every one- and two-summand
    substructure passes its own direct-sum check; this runs all of them.
    """
    out = []
    blocks = structure.blocks
    for i in range(len(blocks)):
        sub = CanonicalStructure((blocks[i],))
        rep = verify_direct_sum(make_structure_pair(sub), assemble(sub, lambda_tol), backend)
        out.append(PairwiseReport(i, i, rep))
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            sub = CanonicalStructure((blocks[i], blocks[j]))
            rep = verify_direct_sum(make_structure_pair(sub), assemble(sub, lambda_tol), backend)
            out.append(PairwiseReport(i, j, rep))
    return out


def project_to_pattern(
    pair0: SkewPair,
    pattern: StarPattern,
    C: SkewPair,
    tangent: TangentMap | None = None,
) -> tuple[SkewPair, np.ndarray]:
    """Unique pattern-form representative of the coset C + T(pair0).

    Returns (D, S) with D = C + S^T pair0 + pair0 S supported on the stars;
    D is unique when the direct sum holds, S is the minimum-norm witness.
    Raises :class:`DirectSumError` when no pattern-form representative can
    be reached (the least-squares system is inconsistent).
    """
    n = pair0.n
    if C.n != n or pattern.n != n:
        raise ValueError("dimension mismatch")
    tm = tangent if tangent is not None else tangent_map(pair0)
    star = set(_star_coord_indices(pattern))
    off = [k for k in range(n * (n - 1)) if k not in star]
    T_off = tm.matrix[off, :]
    c_off = pair_coords(C)[off]
    s, *_ = np.linalg.lstsq(T_off, -c_off, rcond=None)
    residual = np.linalg.norm(T_off @ s + c_off)
    if residual > 1e-7 * max(1.0, np.linalg.norm(c_off)):
        raise DirectSumError(
            f"no pattern-form representative: residual {residual:.3e}",
            report=verify_direct_sum(pair0, pattern, backend="float"),
        )
    S = s.reshape(n, n)
    dA = C.A + S.T @ pair0.A + pair0.A @ S
    dB = C.B + S.T @ pair0.B + pair0.B @ S
    D = SkewPair(0.5 * (dA - dA.T), 0.5 * (dB - dB.T))
    return D, S
