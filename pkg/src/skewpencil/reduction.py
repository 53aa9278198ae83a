"""Iterative reduction of a perturbed canonical pair to its deformation form.

Given a canonical pair (A, B), its star pattern, and a nearby skew pair
(A + M, B + R), the reduction builds congruences S_i = I + X_i whose
product S brings the perturbed pair to (A, B) + D with D supported on the
stars.  Each X_i solves a linear system whose coefficients come from the
current perturbed pair, and the off-pattern residual decays quadratically
inside the guaranteed basin (and usually far outside it).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import SkewPair, congruence, frobenius_off_pattern
from .pattern import StarPattern
from .tangent import (
    DirectSumError,
    TangentMap,
    _star_coord_indices,
    pair_coords,
    tangent_map,
)

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 30


def pair_off_norm(delta: SkewPair, pattern: StarPattern) -> float:
    """Frobenius norm of a pair over the non-star positions."""
    a = frobenius_off_pattern(delta.A, pattern.mask_a)
    b = frobenius_off_pattern(delta.B, pattern.mask_b)
    return float(np.hypot(a, b))


@dataclass(frozen=True)
class IterationSchedule:
    """Constants certifying quadratic convergence inside the basin m**-4.

    The sequences start at eps_1 = delta_1 = m**-4 and follow
    eps_{i+1} = m * eps_i**2, delta_{i+1} = delta_i + m * eps_i, which keeps
    eps_i <= m**-2i, delta_i < m**-2 and sum(eps_i) < 1 for every m >= 3.
    """

    m: int

    def __post_init__(self):
        if self.m < 3:
            raise ValueError("schedule needs m >= 3")

    @property
    def basin(self) -> float:
        return float(self.m) ** -4

    def epsilon_exponent(self, i: int) -> int:
        """eps_i equals m**e exactly; returns the integer exponent e."""
        if i < 1:
            raise ValueError("index is 1-based")
        e = -4
        for _ in range(i - 1):
            e = 2 * e + 1
        return e

    def epsilons(self, count: int) -> list[float]:
        """First ``count`` eps values in floating point (underflow to 0)."""
        out, e = [], Fraction(1, self.m ** 4)
        for _ in range(count):
            out.append(float(e))
            e = self.m * e * e
            if e.denominator.bit_length() > 4096:
                # exact denominators square each step; beyond float range
                # keep only the (zero) float image
                e = Fraction(0)
        return out

    def deltas(self, count: int) -> list[float]:
        out, d = [], self.m ** -4
        for eps in self.epsilons(count):
            out.append(d)
            d = d + self.m * eps
        return out

    def verify_exact(self, count: int = 50, cap: int = 200) -> bool:
        """Exact rational check of the schedule bounds for the first terms.

        eps_i is an exact power of m, so the eps bound is an integer
        exponent comparison.  delta_count and sum(eps) are sums of exact
        powers; terms smaller than m**-cap are replaced by the rigorous
        per-term upper bound m**-(cap+1), keeping all comparisons exact
        while denominators stay of size m**cap.
        """
        m = self.m
        exps = [self.epsilon_exponent(i) for i in range(1, count + 1)]
        if any(e > -2 * i for i, e in enumerate(exps, start=1)):
            return False
        tail_term = Fraction(1, m ** (cap + 1))

        def power_sum(exponents) -> Fraction:
            total = Fraction(0)
            for e in exponents:
                total += Fraction(1, m ** -e) if -e <= cap else tail_term
            return total

        # delta_i grows with i, so the last delta dominates all earlier ones
        delta_last = Fraction(1, m ** 4) + power_sum(e + 1 for e in exps[:-1])
        if not delta_last < Fraction(1, m * m):
            return False
        return power_sum(exps) < 1


def correction_step(
    base: SkewPair,
    current: SkewPair,
    pattern: StarPattern,
    coefficients: SkewPair | None = None,
    tangent: TangentMap | None = None,
) -> np.ndarray:
    """One linearised correction X.

    Solves (minimum-norm) for X with the off-pattern part of
    (M, R) + X^T P + P X equal to zero, where (M, R) = current - base and
    P is the coefficient pair -- the current perturbed pair itself unless
    ``coefficients`` overrides it (freezing them at ``base`` also works).
    Raises :class:`DirectSumError` when the system is inconsistent, which
    signals a failing direct sum or a perturbation outside the chart.
    """
    n = base.n
    coeff = coefficients if coefficients is not None else current
    tm = tangent if tangent is not None else tangent_map(coeff)
    star = set(_star_coord_indices(pattern))
    off = [k for k in range(n * (n - 1)) if k not in star]
    T_off = tm.matrix[off, :]
    rhs = -pair_coords(current - base)[off]
    x, *_ = np.linalg.lstsq(T_off, rhs, rcond=None)
    residual = np.linalg.norm(T_off @ x - rhs)
    if residual > 1e-7 * max(1.0, np.linalg.norm(rhs)):
        raise DirectSumError(f"correction system inconsistent: residual {residual:.3e}")
    return x.reshape(n, n)


@dataclass(frozen=True)
class IterationRecord:
    X: np.ndarray
    off_pattern_norm: float
    full_norm: float


@dataclass(frozen=True)
class ReductionTrace:
    """Per-iteration corrections, the accumulated congruence and residual."""

    converged: bool
    iterations: tuple[IterationRecord, ...]
    S: np.ndarray
    D: SkewPair
    initial_off_norm: float
    initial_full_norm: float
    tol: float

    def off_norms(self) -> list[float]:
        """Off-pattern residuals including the initial one."""
        return [self.initial_off_norm] + [it.off_pattern_norm for it in self.iterations]

    def to_json(self) -> dict:
        from .core import matrix_to_json, pair_to_json

        return {
            "converged": self.converged,
            "tol": self.tol,
            "initial_off_pattern_norm": self.initial_off_norm,
            "initial_full_norm": self.initial_full_norm,
            "iterations": [
                {
                    "X": matrix_to_json(it.X),
                    "off_pattern_norm": it.off_pattern_norm,
                    "full_norm": it.full_norm,
                }
                for it in self.iterations
            ],
            "S": matrix_to_json(self.S),
            "D": pair_to_json(self.D),
            "pattern_supported": bool(
                (not self.iterations and self.initial_off_norm <= self.tol)
                or (self.iterations and self.iterations[-1].off_pattern_norm <= self.tol)
            ),
        }


def reduce_pair(
    base: SkewPair,
    perturbed: SkewPair,
    pattern: StarPattern,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    refresh_coefficients: bool = True,
) -> ReductionTrace:
    """Iterate congruences until the residual is supported on the pattern.

    Produces S (a product of I + X_i factors) with
    S^T perturbed S = base + D and the off-pattern norm of D at most tol.
    Running out of iterations yields a non-converged trace, not an error;
    the recorded residuals let callers diagnose leaving the basin.
    """
    if perturbed.n != base.n or pattern.n != base.n:
        raise ValueError("dimension mismatch")
    n = base.n
    P = perturbed
    S = np.eye(n, dtype=complex)
    initial_off = pair_off_norm(P - base, pattern)
    initial_full = (P - base).norm()
    records: list[IterationRecord] = []
    off = initial_off
    while off > tol and len(records) < max_iter:
        coeff = P if refresh_coefficients else base
        X = correction_step(base, P, pattern, coefficients=coeff)
        step = np.eye(n, dtype=complex) + X
        P = congruence(P, step)
        S = S @ step
        delta = P - base
        off = pair_off_norm(delta, pattern)
        records.append(IterationRecord(X, off, delta.norm()))
    return ReductionTrace(
        converged=off <= tol,
        iterations=tuple(records),
        S=S,
        D=P - base,
        initial_off_norm=initial_off,
        initial_full_norm=initial_full,
        tol=tol,
    )


def schedule_for(base: SkewPair, pattern: StarPattern) -> IterationSchedule:
    """Schedule constant m for a pair and its pattern.

    c sums the norms of the minimum-norm corrections for the antisymmetric
    unit directions at every non-star off-diagonal position of either
    matrix (both orientations counted); m is the smallest integer >= 3
    strictly exceeding c, c(a+1)(2+c), c(b+1)(2+c), c^2(a+1) and c^2(b+1)
    with a, b the Frobenius norms of the base matrices.
    """
    n = base.n
    tm = tangent_map(base)
    star = set(_star_coord_indices(pattern))
    off = [k for k in range(n * (n - 1)) if k not in star]
    if off:
        P = np.linalg.pinv(tm.matrix[off, :])
        col_norms = np.linalg.norm(P, axis=0)
        c = 2.0 * float(col_norms.sum())
    else:
        c = 0.0
    a = float(np.linalg.norm(base.A))
    b = float(np.linalg.norm(base.B))
    bounds = [c, c * (a + 1) * (2 + c), c * (b + 1) * (2 + c), c * c * (a + 1), c * c * (b + 1)]
    m = max(3, int(np.floor(max(bounds))) + 1)
    return IterationSchedule(m)
