"""Counting integer solutions of  sum(n_i * a_i) <= T  with per-variable lower bounds.

The coefficients are positive reals, so this is plain enumeration rather
than number theory: recursive descent over the variables in input order,
with the last two dimensions collapsed into a closed-form scan.  All float
comparisons against the threshold go through an epsilon guard that treats
near-ties as satisfied and counts them, so ambiguous inputs are visible
instead of silently resolved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ArgumentError, CountRangeError

DEFAULT_EPSILON = 1e-9
UINT64_MAX = 2**64 - 1

# below this many values of the outer variable, a plain loop beats numpy
_VECTOR_MIN = 64
_CHUNK = 1 << 22


@dataclass
class EpsilonGuard:
    """Tolerant threshold comparisons with a near-tie counter.

    ``near_ties`` counts comparisons that were decided by the tolerance;
    a nonzero value means some count depended on values within epsilon of a
    boundary and should be treated with suspicion.
    """

    epsilon: float = DEFAULT_EPSILON
    near_ties: int = 0

    def le(self, lhs: float, rhs: float) -> bool:
        if abs(lhs - rhs) <= self.epsilon:
            self.near_ties += 1
            return True
        return lhs <= rhs

    def floor_div(self, x: float, a: float) -> int:
        """Largest integer n with n * a <= x (+epsilon), verified by multiplying back."""
        n = math.floor(x / a)
        if (n + 1) * a <= x + self.epsilon:
            n += 1
        elif n * a > x + self.epsilon:
            n -= 1
        if abs(n * a - x) <= self.epsilon:
            self.near_ties += 1
        return n


@dataclass(frozen=True)
class CountingProblem:
    """The inequality sum(n_i * coefficients[i]) <= threshold, n_i >= lower_bounds[i]."""

    coefficients: tuple[float, ...]
    threshold: float
    lower_bounds: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(self.coefficients))
        object.__setattr__(self, "lower_bounds", tuple(self.lower_bounds))
        for a in self.coefficients:
            if not (a > 0) or math.isinf(a):
                raise ArgumentError(f"coefficient {a!r} must be positive and finite")
        if len(self.lower_bounds) != len(self.coefficients):
            raise ArgumentError("lower_bounds must match coefficients in length")
        for b in self.lower_bounds:
            if not isinstance(b, int) or isinstance(b, bool) or b < 0:
                raise ArgumentError(f"lower bound {b!r} must be a non-negative integer")
        if math.isnan(self.threshold):
            raise ArgumentError("threshold must be a number")

    @classmethod
    def natural(cls, coefficients: Sequence[float], threshold: float) -> "CountingProblem":
        """All variables at least 1 (the default reading of the inner counts)."""
        coeffs = tuple(float(a) for a in coefficients)
        return cls(coeffs, float(threshold), (1,) * len(coeffs))

    @classmethod
    def nonnegative(cls, coefficients: Sequence[float], threshold: float) -> "CountingProblem":
        coeffs = tuple(float(a) for a in coefficients)
        return cls(coeffs, float(threshold), (0,) * len(coeffs))


def _tail_pairs(R: float, a: float, b: float, la: int, lb: int, guard: EpsilonGuard) -> int:
    """#{(n_a >= la, n_b >= lb) : n_a*a + n_b*b <= R}, last two dimensions."""
    hi = guard.floor_div(R - lb * b, a)
    if hi < la:
        return 0
    eps = guard.epsilon
    total = 0
    if hi - la + 1 < _VECTOR_MIN:
        for n in range(la, hi + 1):
            x = R - n * a
            q = guard.floor_div(x, b)
            if q >= lb:
                total += q - lb + 1
        return total
    if (R - lb * b) / b > 2.0**62:
        # a single row already crowds the 64-bit result range
        raise CountRangeError("count exceeds the unsigned 64-bit range")
    lo = la
    while lo <= hi:
        up = min(hi, lo + _CHUNK - 1)
        ns = np.arange(lo, up + 1, dtype=np.float64)
        x = R - ns * a
        q = np.floor(x / b)
        q += (q + 1.0) * b <= x + eps
        q -= q * b > x + eps
        guard.near_ties += int(np.count_nonzero(np.abs(q * b - x) <= eps))
        counts = q.astype(np.int64) - (lb - 1)
        total += int(np.sum(np.maximum(counts, 0), dtype=np.int64))
        if total > UINT64_MAX:
            raise CountRangeError("count exceeds the unsigned 64-bit range")
        lo = up + 1
    return total


def count(
    problem: CountingProblem,
    epsilon: float = DEFAULT_EPSILON,
    guard: Optional[EpsilonGuard] = None,
) -> int:
    """Exact number of admissible integer tuples for the problem.

    With no variables the inequality degenerates to an indicator of
    0 <= threshold.  The result is kept inside the unsigned 64-bit range;
    anything larger raises instead of wrapping or approximating.
    """
    if guard is None:
        guard = EpsilonGuard(epsilon)
    coeffs = problem.coefficients
    bounds = problem.lower_bounds
    T = problem.threshold
    if not coeffs:
        return 1 if guard.le(0.0, T) else 0

    def rec(j: int, R: float) -> int:
        remaining = len(coeffs) - j
        a = coeffs[j]
        lb = bounds[j]
        if remaining == 1:
            n = guard.floor_div(R, a)
            return n - lb + 1 if n >= lb else 0
        if remaining == 2:
            return _tail_pairs(R, a, coeffs[j + 1], lb, bounds[j + 1], guard)
        total = 0
        n = lb
        while guard.le(n * a, R):
            total += rec(j + 1, R - n * a)
            if total > UINT64_MAX:
                raise CountRangeError("count exceeds the unsigned 64-bit range")
            n += 1
        return total

    result = rec(0, T)
    if result > UINT64_MAX:
        raise CountRangeError("count exceeds the unsigned 64-bit range")
    return result


def count_two_term(coefficients: Sequence[float], lam: float) -> float:
    """Two leading terms of the polynomial expansion of the natural-solution count.

    For beta coefficients a_i and threshold lam this is
    (1/prod a_i) * (lam^beta / beta! - (sum a_i / 2) * lam^(beta-1) / (beta-1)!),
    accurate up to O(lam^(beta-2)).
    """
    coeffs = [float(a) for a in coefficients]
    if not coeffs:
        raise ArgumentError("the expansion needs at least one coefficient")
    for a in coeffs:
        if not (a > 0) or math.isinf(a):
            raise ArgumentError(f"coefficient {a!r} must be positive and finite")
    beta = len(coeffs)
    lead = lam**beta / math.factorial(beta)
    second = 0.5 * sum(coeffs) * lam ** (beta - 1) / math.factorial(beta - 1)
    return (lead - second) / math.prod(coeffs)


def count_inclusion_exclusion(
    problem: CountingProblem,
    required_nonzero_groups: Sequence[Iterable[int]],
    epsilon: float = DEFAULT_EPSILON,
    guard: Optional[EpsilonGuard] = None,
) -> int:
    """Count tuples of the base problem where every group has some variable >= 1.

    The base problem must use all-zero lower bounds; each group is a set of
    0-based variable indices, and a tuple qualifies when, for every group,
    at least one listed variable is nonzero.  Computed by inclusion-exclusion
    over forcing whole groups to zero (dropping those variables).
    """
    if any(b != 0 for b in problem.lower_bounds):
        raise ArgumentError("inclusion-exclusion needs a base problem with all lower bounds zero")
    if guard is None:
        guard = EpsilonGuard(epsilon)
    groups: list[frozenset[int]] = []
    for raw in required_nonzero_groups:
        grp = frozenset(raw)
        if not grp:
            raise ArgumentError("groups must be non-empty")
        for i in grp:
            if not isinstance(i, int) or isinstance(i, bool) or not (0 <= i < len(problem.coefficients)):
                raise ArgumentError(f"variable index {i!r} out of range")
        groups.append(grp)

    total = 0
    for mask in range(1 << len(groups)):
        zeroed: set[int] = set()
        sign = 1
        for gi, grp in enumerate(groups):
            if mask >> gi & 1:
                zeroed |= grp
                sign = -sign
        kept = [a for i, a in enumerate(problem.coefficients) if i not in zeroed]
        sub = CountingProblem(tuple(kept), problem.threshold, (0,) * len(kept))
        total += sign * count(sub, guard=guard)
    return total
