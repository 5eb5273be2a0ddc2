"""Exact integer arithmetic: factorization, totient, radicals, phi(t)/t.

Everything here is exact.  Integers are arbitrary precision, rationals are
`fractions.Fraction` (always in lowest terms), and the factorization routine
is deterministic: trial division up to a fixed bound, then Pollard rho with
a deterministic parameter sweep, with every prime cofactor certified by a
Miller-Rabin test that is deterministic for inputs below 3.3e24.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Factorization",
    "factor",
    "is_prime",
    "euler_phi",
    "rad",
    "rad4",
    "phi_over",
]

# Witnesses proving primality for all n < 3_317_044_064_679_887_385_961_981
# (Sorenson & Webster), which covers every 64-bit integer.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 1_000_000


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test, deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = ((d & -d).bit_length()) - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Ordered prime-power decomposition of a positive integer.

    `factors` is a tuple of (prime, exponent) pairs with strictly increasing
    primes and exponents >= 1; the empty tuple represents 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError(f"value must be positive, got {self.value}")
        prev = 1
        prod = 1
        for p, e in self.factors:
            if p <= prev:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be at least 1")
            prev = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


def _pollard_rho(n: int) -> int:
    """Return a nontrivial factor of composite odd n (deterministic sweep)."""
    if n % 2 == 0:
        return 2
    # Brent's cycle variant; iterate over polynomial offsets until a factor
    # splits off.  n is composite here, so some offset must succeed.
    for c in range(1, n):
        f = lambda x: (x * x + c) % n
        x = y = 2
        d = 1
        while d == 1:
            x = f(x)
            y = f(f(y))
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho sweep exhausted for {n}")  # pragma: no cover


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_rho(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


def factor(n: int) -> Factorization:
    """Canonical factorization of n >= 1.  factor(1) has no factors."""
    if n < 1:
        raise ValueError(f"cannot factor {n}; need a positive integer")
    value = n
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    # 30-wheel trial division up to the bound, stopping early once the
    # remaining cofactor is certainly prime.
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d <= _TRIAL_LIMIT and d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += wheel[i]
        i = (i + 1) & 7
    if n > 1:
        if d * d > n:
            out[n] = out.get(n, 0) + 1
        else:
            _factor_into(n, out)
    return Factorization(value, tuple(sorted(out.items())))


def _as_factorization(n: Factorization | int) -> Factorization:
    return n if isinstance(n, Factorization) else factor(n)


def euler_phi(n: Factorization | int) -> int:
    """Euler totient: the number of 1 <= k <= n coprime to n."""
    f = _as_factorization(n)
    out = 1
    for p, e in f.factors:
        out *= p ** (e - 1) * (p - 1)
    return out


def rad(n: Factorization | int) -> int:
    """Radical: the product of the distinct primes dividing n; rad(1) = 1."""
    f = _as_factorization(n)
    out = 1
    for p, _ in f.factors:
        out *= p
    return out


def rad4(n: Factorization | int) -> int:
    """rad(n) when 4 does not divide n, and 2*rad(n) otherwise."""
    f = _as_factorization(n)
    r = rad(f)
    return 2 * r if f.value % 4 == 0 else r


def phi_over(n: Factorization | int) -> Fraction:
    """phi(n)/n in lowest terms; equals prod (p-1)/p over primes p | n.

    Depends only on rad(n).
    """
    f = _as_factorization(n)
    num = 1
    den = 1
    for p, _ in f.factors:
        num *= p - 1
        den *= p
    return Fraction(num, den)
