"""Lattice points in the simplex a_1 x_1 + ... + a_s x_s <= lambda.

Two counting paths: an exact integer path for bounded products of distinct
primes (pure integer comparisons, no rounding questions) and a real path
for arbitrary positive coefficients with a documented boundary tolerance.
On top of the counts: the strata of nonnegative-integer points by their
zero coordinates, the volume (trivial) bounds, the sharper half-shift
bounds, and the two-term asymptotic estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .arith import is_prime

__all__ = [
    "LatticeInstance",
    "StrataCounts",
    "count_products",
    "iter_exponent_vectors",
    "count_real",
    "strata",
    "shift_identity_check",
    "trivial_bounds",
    "refined_bounds",
    "two_term_estimate",
    "coeffs_are_prime_logs",
    "DEFAULT_BOUNDARY_TOL",
]

# Points within this absolute distance of the bounding hyperplane are
# counted as inside (ties resolved towards inclusion on the real path).
DEFAULT_BOUNDARY_TOL = 1e-12


@dataclass(frozen=True)
class LatticeInstance:
    """Simplex data: positive real coefficients and a budget lambda >= 0.

    s = 0 (no coefficients) is the degenerate simplex containing only the
    origin.
    """

    coeffs: tuple[float, ...]
    lam: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))
        object.__setattr__(self, "lam", float(self.lam))
        if any(c <= 0 for c in self.coeffs):
            raise ValueError("all coefficients must be positive")
        if self.lam < 0:
            raise ValueError("lambda must be non-negative")

    @property
    def s(self) -> int:
        return len(self.coeffs)


@dataclass
class StrataCounts:
    """Counts of the exponent vectors with product <= T, by zero pattern.

    total   : all vectors
    plus    : every coordinate positive
    boundary: per position j, vectors with exactly coordinate j zero
    rest    : two or more zero coordinates
    pairs   : for i < j, vectors with coordinates i and j both zero

    total = plus + sum(boundary) + rest always (the classes partition).
    """

    total: int
    plus: int
    boundary: tuple[int, ...]
    rest: int
    pairs: dict[tuple[int, int], int]


def _check_primes(primes) -> tuple[int, ...]:
    ps = tuple(int(p) for p in primes)
    if len(set(ps)) != len(ps):
        raise ValueError(f"repeated primes in {ps}")
    for p in ps:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    return ps


def count_products(primes, limit: int) -> int:
    """Number of exponent vectors v >= 0 with prod p_i^(v_i) <= limit.

    Pure integer comparisons (depth-first with floor-divided budgets).
    count_products(primes, 0) = 0 by convention: no positive integer
    is <= 0.
    """
    ps = _check_primes(primes)
    limit = int(limit)
    if limit < 1:
        return 0

    def go(i: int, budget: int) -> int:
        if i == len(ps):
            return 1
        p = ps[i]
        total = 0
        while True:
            total += go(i + 1, budget)
            if budget < p:
                return total
            budget //= p

    return go(0, limit)


def iter_exponent_vectors(primes, limit: int) -> Iterator[tuple[tuple[int, ...], int]]:
    """Yield (vector, product) for every vector with product <= limit."""
    ps = _check_primes(primes)
    limit = int(limit)
    if limit < 1:
        return
    s = len(ps)
    vec = [0] * s

    def go(i: int, value: int) -> Iterator[tuple[tuple[int, ...], int]]:
        if i == s:
            yield tuple(vec), value
            return
        p = ps[i]
        v = 0
        cur = value
        while cur <= limit:
            vec[i] = v
            yield from go(i + 1, cur)
            v += 1
            cur *= p
        vec[i] = 0

    yield from go(0, 1)


def count_real(inst: LatticeInstance, tol: float = DEFAULT_BOUNDARY_TOL) -> int:
    """Exact count of nonnegative integer points with sum a_i x_i <= lambda.

    Recursive enumeration over x_1 in [0, floor(lambda/a_1)] with reduced
    budget; boundary ties resolved by <= with the absolute tolerance.
    """
    coeffs = inst.coeffs

    def go(i: int, budget: float) -> int:
        if i == len(coeffs):
            return 1
        a = coeffs[i]
        total = 0
        x = 0
        while x * a <= budget + tol:
            total += go(i + 1, budget - x * a)
            x += 1
        return total

    return go(0, inst.lam)


def strata(primes, limit: int) -> StrataCounts:
    """Stratify the vectors with product <= limit by zero coordinates."""
    ps = _check_primes(primes)
    s = len(ps)
    total = plus = rest = 0
    boundary = [0] * s
    pairs = {(i, j): 0 for i in range(s) for j in range(i + 1, s)}
    for vec, _ in iter_exponent_vectors(ps, limit):
        total += 1
        zeros = [i for i, v in enumerate(vec) if v == 0]
        z = len(zeros)
        if z == 0:
            plus += 1
        elif z == 1:
            boundary[zeros[0]] += 1
        else:
            rest += 1
            for i, j in combinations(zeros, 2):
                pairs[(i, j)] += 1
    return StrataCounts(total, plus, tuple(boundary), rest, pairs)


def shift_identity_check(primes, limit: int) -> bool:
    """Check |all-positive vectors <= limit| = count_products(primes, limit // prod(primes)).

    The identity shifts every coordinate down by one; integrality of the
    products justifies the floor.
    """
    ps = _check_primes(primes)
    lhs = strata(ps, limit).plus
    rhs = count_products(ps, int(limit) // math.prod(ps))
    return lhs == rhs


def _volume_denominator(inst: LatticeInstance) -> float:
    return math.factorial(inst.s) * math.prod(inst.coeffs)


def trivial_bounds(inst: LatticeInstance) -> tuple[float, float]:
    """Volume bounds: lambda^s/(s! prod a) < count <= (lambda + sum a)^s/(s! prod a).

    Inner and outer unit-cube packings; the lower bound is strict for
    every lambda > 0.  The upper bound is strict except in one degenerate
    situation: s = 1 with lambda an exact multiple of the coefficient,
    where the cube union fills the enlarged interval and count = upper.
    """
    if inst.s == 0:
        raise ValueError("volume bounds need at least one coefficient")
    if inst.lam <= 0:
        raise ValueError("volume bounds need lambda > 0")
    denom = _volume_denominator(inst)
    lower = inst.lam**inst.s / denom
    upper = (inst.lam + sum(inst.coeffs)) ** inst.s / denom
    return lower, upper


def refined_bounds(inst: LatticeInstance, pivot: int | None = None) -> tuple[float, float]:
    """Half-shift bounds: the classical sharper polynomial pair.

    lower = (lambda^s + (s/2)(sum of coeffs except the pivot) lambda^(s-1)) / (s! prod a)
    upper = (lambda + (1/2) sum a)^s / (s! prod a)

    The pivot coefficient is omitted from the lower correction term;
    default is the largest coefficient (weakest correction).  REPORT ONLY:
    the upper bound fails on small concrete instances (e.g. coeffs (1, 1),
    lambda 2 gives 4.5 while the exact count is 6), so callers record
    margins and flag violations instead of asserting.
    """
    if inst.s == 0:
        raise ValueError("half-shift bounds need at least one coefficient")
    if inst.lam <= 0:
        raise ValueError("half-shift bounds need lambda > 0")
    coeffs = inst.coeffs
    if pivot is None:
        pivot = max(range(len(coeffs)), key=coeffs.__getitem__)
    elif pivot < 0 or pivot >= len(coeffs):
        raise ValueError(f"pivot {pivot} out of range")
    denom = _volume_denominator(inst)
    others = sum(coeffs) - coeffs[pivot]
    s, lam = inst.s, inst.lam
    lower = (lam**s + 0.5 * s * others * lam ** (s - 1)) / denom
    upper = (lam + 0.5 * sum(coeffs)) ** s / denom
    return lower, upper


def two_term_estimate(inst: LatticeInstance) -> float:
    """Two-term asymptotic for the count: volume plus half-boundary term.

    lambda^s/(s! prod a) + (1/(2 (s-1)!)) (sum a / prod a) lambda^(s-1).
    Sharp (error o(lambda^(s-1))) when the coefficients are linearly
    independent over Q, e.g. logs of distinct primes; the caller is
    responsible for that hypothesis.
    """
    if inst.s == 0:
        raise ValueError("the estimate needs at least one coefficient")
    s, lam = inst.s, inst.lam
    main = lam**s / _volume_denominator(inst)
    second = (
        (sum(inst.coeffs) / math.prod(inst.coeffs))
        * lam ** (s - 1)
        / (2 * math.factorial(s - 1))
    )
    return main + second


def coeffs_are_prime_logs(coeffs, tol: float = 1e-9) -> bool:
    """Whether every coefficient is the log of a prime, all primes distinct."""
    seen = set()
    for c in coeffs:
        n = round(math.exp(c))
        if n < 2 or abs(math.log(n) - c) > tol or not is_prime(n) or n in seen:
            return False
        seen.add(n)
    return True
