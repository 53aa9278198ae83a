"""Dense complex matrices, canonical skew-symmetric pairs, congruence, norms.

Every matrix is a numpy complex128 array.  A pair (A, B) of n-by-n
skew-symmetric matrices is the basic object; the congruence action is
(A, B) |-> (S^T A S, S^T B S) for nonsingular S.  Three families of
indecomposable canonical pairs generate everything up to congruence:

* ``H`` -- regular pair with finite eigenvalue lambda, size 2n,
* ``K`` -- regular pair with infinite eigenvalue, size 2n,
* ``L`` -- singular pair, size 2n+1 (n = 0 gives the 1x1 zero pair).
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np

#: relative tolerance for the skew-symmetry invariant of floating pairs
SKEW_RTOL = 1e-12


def make_jordan(n: int, lam: complex) -> np.ndarray:
    """n-by-n upper bidiagonal block: lam on the diagonal, 1 above it."""
    if n < 1:
        raise ValueError("Jordan block size must be >= 1")
    J = np.zeros((n, n), dtype=complex)
    np.fill_diagonal(J, lam)
    idx = np.arange(n - 1)
    J[idx, idx + 1] = 1.0
    return J


def make_F(n: int) -> np.ndarray:
    """n-by-(n+1) matrix [I_n | 0]; n = 0 gives the empty 0x1 matrix."""
    if n < 0:
        raise ValueError("size must be >= 0")
    F = np.zeros((n, n + 1), dtype=complex)
    idx = np.arange(n)
    F[idx, idx] = 1.0
    return F


def make_G(n: int) -> np.ndarray:
    """n-by-(n+1) matrix [0 | I_n]; n = 0 gives the empty 0x1 matrix."""
    if n < 0:
        raise ValueError("size must be >= 0")
    G = np.zeros((n, n + 1), dtype=complex)
    idx = np.arange(n)
    G[idx, idx + 1] = 1.0
    return G


def skew_embed(M: np.ndarray) -> np.ndarray:
    """Return [[0, M], [-M^T, 0]], the skew-symmetric embedding of M."""
    r, c = M.shape
    out = np.zeros((r + c, r + c), dtype=complex)
    out[:r, r:] = M
    out[r:, :r] = -M.T
    return out


@dataclass(frozen=True)
class CanonicalBlock:
    """One indecomposable summand: kind 'H', 'K' or 'L' with size n.

    ``lam`` is the eigenvalue and is meaningful only for kind 'H'.
    """

    kind: str
    n: int
    lam: complex = 0j

    def __post_init__(self):
        if self.kind not in ("H", "K", "L"):
            raise ValueError(f"unknown block kind {self.kind!r}")
        if self.kind in ("H", "K") and self.n < 1:
            raise ValueError(f"{self.kind} block needs n >= 1")
        if self.kind == "L" and self.n < 0:
            raise ValueError("L block needs n >= 0")
        object.__setattr__(self, "lam", complex(self.lam))
        if self.kind != "H" and self.lam != 0:
            raise ValueError("eigenvalue is only meaningful for H blocks")

    @property
    def dim(self) -> int:
        return 2 * self.n + (1 if self.kind == "L" else 0)

    def sort_key(self):
        kind_rank = {"H": 0, "K": 1, "L": 2}[self.kind]
        if self.kind == "H":
            return (kind_rank, self.lam.real, self.lam.imag, -self.n)
        return (kind_rank, 0.0, 0.0, -self.n)


@dataclass(frozen=True)
class SkewPair:
    """A pair (A, B) of n-by-n skew-symmetric complex matrices."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        A = np.array(self.A, dtype=complex)
        B = np.array(self.B, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("A must be square")
        if B.shape != A.shape:
            raise ValueError("A and B must have the same shape")
        if not (np.all(np.isfinite(A.view(float))) and np.all(np.isfinite(B.view(float)))):
            raise ValueError("entries must be finite")
        for M in (A, B):
            scale = max(1.0, np.linalg.norm(M))
            if np.linalg.norm(M + M.T) > SKEW_RTOL * scale:
                raise ValueError("matrix is not skew-symmetric")
        A.setflags(write=False)
        B.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def __add__(self, other: "SkewPair") -> "SkewPair":
        return SkewPair(self.A + other.A, self.B + other.B)

    def __sub__(self, other: "SkewPair") -> "SkewPair":
        return SkewPair(self.A - other.A, self.B - other.B)

    def norm(self) -> float:
        """Frobenius norm of the pair, sqrt(||A||^2 + ||B||^2)."""
        return float(np.sqrt(np.linalg.norm(self.A) ** 2 + np.linalg.norm(self.B) ** 2))


@dataclass(frozen=True)
class CanonicalStructure:
    """An ordered direct sum of canonical blocks.

    Blocks are normalised to the library's canonical order: H blocks first,
    sorted by eigenvalue (lexicographic on (re, im)) then size descending,
    then K by size descending, then L by size descending.  The order is a
    convention; summands are only determined up to permutation.
    """

    blocks: tuple[CanonicalBlock, ...]

    def __post_init__(self):
        blocks = tuple(sorted(self.blocks, key=lambda b: b.sort_key()))
        object.__setattr__(self, "blocks", blocks)

    @property
    def dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    def block_offsets(self) -> list[int]:
        """Starting row/column of each block in the assembled pair."""
        offs, pos = [], 0
        for b in self.blocks:
            offs.append(pos)
            pos += b.dim
        return offs


def make_block(block: CanonicalBlock) -> SkewPair:
    """Construct the canonical pair of a single block, exactly skew."""
    n = block.n
    if block.kind == "H":
        A = skew_embed(np.eye(n, dtype=complex))
        B = skew_embed(make_jordan(n, block.lam))
    elif block.kind == "K":
        A = skew_embed(make_jordan(n, 0.0))
        B = skew_embed(np.eye(n, dtype=complex))
    else:
        A = skew_embed(make_F(n))
        B = skew_embed(make_G(n))
    return SkewPair(A, B)


def direct_sum(pairs: list[SkewPair]) -> SkewPair:
    """Block-diagonal sum of skew pairs; the empty sum is the 0x0 pair."""
    total = sum(p.n for p in pairs)
    A = np.zeros((total, total), dtype=complex)
    B = np.zeros((total, total), dtype=complex)
    pos = 0
    for p in pairs:
        A[pos:pos + p.n, pos:pos + p.n] = p.A
        B[pos:pos + p.n, pos:pos + p.n] = p.B
        pos += p.n
    return SkewPair(A, B)


def make_structure_pair(structure: CanonicalStructure) -> SkewPair:
    """Canonical pair of a whole structure (direct sum in canonical order)."""
    return direct_sum([make_block(b) for b in structure.blocks])


def congruence(pair: SkewPair, S: np.ndarray) -> SkewPair:
    """Apply (A, B) |-> (S^T A S, S^T B S).

    Warns (does not fail) when S looks numerically singular.  The results
    are re-skewed to absorb floating-point drift.
    """
    S = np.asarray(S, dtype=complex)
    if S.shape != (pair.n, pair.n):
        raise ValueError(f"S must be {pair.n}x{pair.n}, got {S.shape}")
    if pair.n > 0:
        cond = np.linalg.cond(S)
        if not np.isfinite(cond) or cond > 1e12:
            warnings.warn(f"congruence matrix is ill-conditioned (cond ~ {cond:.2e})")
    A = S.T @ pair.A @ S
    B = S.T @ pair.B @ S
    A = 0.5 * (A - A.T)
    B = 0.5 * (B - B.T)
    return SkewPair(A, B)


def frobenius(M: np.ndarray) -> float:
    """Frobenius norm over all entries."""
    return float(np.linalg.norm(M))


def frobenius_off_pattern(M: np.ndarray, mask: np.ndarray) -> float:
    """Frobenius norm restricted to entries outside the star mask."""
    M = np.asarray(M)
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != M.shape:
        raise ValueError("mask shape must match matrix shape")
    return float(np.linalg.norm(M[~mask]))


# -- JSON encoding -----------------------------------------------------------
#
# matrix    {"rows": r, "cols": c, "entries": [[re, im], ...]}   (row-major)
# pair      {"n": n, "A": <matrix>, "B": <matrix>}
# structure {"blocks": [{"kind": "H", "n": 2, "lambda": [0.0, 1.0]},
#                       {"kind": "L", "n": 0}]}


def matrix_to_json(M: np.ndarray) -> dict:
    M = np.asarray(M, dtype=complex)
    entries = [[float(z.real), float(z.imag)] for z in M.ravel()]
    return {"rows": int(M.shape[0]), "cols": int(M.shape[1]), "entries": entries}


def matrix_from_json(obj: dict) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise ValueError("entry count does not match rows*cols")
    flat = np.array([complex(re, im) for re, im in entries], dtype=complex)
    return flat.reshape(rows, cols)


def pair_to_json(pair: SkewPair) -> dict:
    return {"n": pair.n, "A": matrix_to_json(pair.A), "B": matrix_to_json(pair.B)}


def pair_from_json(obj: dict) -> SkewPair:
    return SkewPair(matrix_from_json(obj["A"]), matrix_from_json(obj["B"]))


def structure_to_json(structure: CanonicalStructure) -> dict:
    blocks = []
    for b in structure.blocks:
        entry: dict = {"kind": b.kind, "n": b.n}
        if b.kind == "H":
            entry["lambda"] = [b.lam.real, b.lam.imag]
        blocks.append(entry)
    return {"blocks": blocks}


def structure_from_json(obj: dict) -> CanonicalStructure:
    blocks = []
    for s in obj["blocks"]:
        lam = 0j
        if s["kind"] == "H":
            lam_re, lam_im = s.get("lambda", [0.0, 0.0])
            lam = complex(lam_re, lam_im)
        blocks.append(CanonicalBlock(s["kind"], int(s["n"]), lam))
    return CanonicalStructure(tuple(blocks))


def dump_json(obj: dict) -> str:
    """Deterministic JSON rendering used by the CLI."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
