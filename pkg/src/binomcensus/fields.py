"""Finite fields F_{p^e}: construction, arithmetic, multiplicative orders,
irreducibility tests, and exhaustive binomial censuses.

Elements of F_{p^e} are coefficient tuples of length e (little-endian in
powers of the generator, residues mod p); the field is a FieldCtx holding
the monic irreducible modulus.  Every element also has an integer code
sum(c_i * p^i) in [0, q); the exhaustive scans run on code tables.

Two independent irreducibility routes live here:

* criterion_irreducible: the arithmetic criterion (order/gcd/congruence
  conditions on t and ord(a)), never touching polynomials;
* rabin_irreducible and the oracle scans: the Rabin test by explicit
  Frobenius iteration in F_q[x]/(f).

The scans dispatch to the compiled kernel when the extension is built and
fall back to its pure-Python twin otherwise.
"""

from __future__ import annotations

import math
import os
from array import array
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, NamedTuple

from .arith import Factorization, factor, is_prime

__all__ = [
    "FieldCtx",
    "OrderRecord",
    "build_field",
    "multiplicative_order",
    "criterion_irreducible",
    "rabin_irreducible",
    "oracle_binomial_scan",
    "oracle_binomial_count",
    "kernel_backend",
    "DEFAULT_FIELD_CEILING",
    "DEFAULT_SCAN_Q_CEILING",
    "DEFAULT_SCAN_DEGREE_CEILING",
    "SCAN_CEILING_ENV",
]

try:
    from . import _kernel as _compiled_kernel
except ImportError:  # extension not built; pure fallback below
    _compiled_kernel = None
from . import _kernel_py as _pure_kernel

# Field construction ceiling (q = p^e) and the default limits for the
# exhaustive a-by-a censuses.  The census q ceiling can be raised or
# lowered through the environment variable without touching code.
DEFAULT_FIELD_CEILING = 1 << 16
DEFAULT_SCAN_Q_CEILING = 64
DEFAULT_SCAN_DEGREE_CEILING = 200
SCAN_CEILING_ENV = "BINOMCENSUS_ORACLE_CEILING"

# Code tables are q^2 entries; beyond this the scans use the generic
# polynomial route.
_TABLE_Q_LIMIT = 512

Element = tuple[int, ...]


def kernel_backend() -> str:
    """Which scan kernel import selected: 'compiled' or 'pure'."""
    return "pure" if _compiled_kernel is None else "compiled"


def scan_q_ceiling() -> int:
    """Current q ceiling for exhaustive scans (env override honoured)."""
    raw = os.environ.get(SCAN_CEILING_ENV)
    if raw is None:
        return DEFAULT_SCAN_Q_CEILING
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{SCAN_CEILING_ENV} must be an integer, got {raw!r}") from exc
    if value < 2:
        raise ValueError(f"{SCAN_CEILING_ENV} must be at least 2, got {value}")
    return value


@dataclass(frozen=True)
class FieldCtx:
    """A concrete model of F_{p^e} with a fixed monic irreducible modulus.

    For e = 1 the modulus is x (elements are residues mod p).  Use
    build_field() rather than constructing directly: it validates p, the
    ceiling, and picks the canonical modulus.
    """

    p: int
    e: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    @cached_property
    def zero(self) -> Element:
        return (0,) * self.e

    @cached_property
    def one(self) -> Element:
        return (1,) + (0,) * (self.e - 1)

    @cached_property
    def _fold(self) -> tuple[tuple[int, ...], ...]:
        # row k = coefficients of x^(e+k) mod modulus, k = 0..e-2
        p, e = self.p, self.e
        if e == 1:
            return ()
        rows = []
        row = [(-c) % p for c in self.modulus[:e]]  # x^e
        rows.append(tuple(row))
        for _ in range(e - 2):
            top = row[e - 1]
            row = [0] + row[: e - 1]
            if top:
                base = rows[0]
                for i in range(e):
                    row[i] = (row[i] + top * base[i]) % p
            rows.append(tuple(row))
        return tuple(rows)

    # -- element arithmetic -------------------------------------------------

    def element(self, coeffs) -> Element:
        c = tuple(int(v) for v in coeffs)
        if len(c) != self.e:
            raise ValueError(f"need {self.e} coefficients, got {len(c)}")
        if any(v < 0 or v >= self.p for v in c):
            raise ValueError(f"coefficients must lie in [0, {self.p})")
        return c

    def add(self, a: Element, b: Element) -> Element:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Element, b: Element) -> Element:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a: Element, b: Element) -> Element:
        p, e = self.p, self.e
        if e == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * e - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        res = prod[:e]
        fold = self._fold
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k] % p
            if c:
                row = fold[k - e]
                for i in range(e):
                    res[i] += c * row[i]
        return tuple(v % p for v in res)

    def pow(self, a: Element, n: int) -> Element:
        if n < 0:
            raise ValueError("exponent must be non-negative")
        result = self.one
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def inv(self, a: Element) -> Element:
        if a == self.zero:
            raise ZeroDivisionError("inversion of zero in a finite field")
        return self.pow(a, self.q - 2)

    # -- codes and enumeration ----------------------------------------------

    def to_code(self, a: Element) -> int:
        code = 0
        for c in reversed(a):
            code = code * self.p + c
        return code

    def from_code(self, code: int) -> Element:
        if code < 0 or code >= self.q:
            raise ValueError(f"code {code} out of range [0, {self.q})")
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(code % p)
            code //= p
        return tuple(out)

    def elements(self) -> Iterator[Element]:
        for code in range(self.q):
            yield self.from_code(code)

    def nonzero_elements(self) -> Iterator[Element]:
        for code in range(1, self.q):
            yield self.from_code(code)


class OrderRecord(NamedTuple):
    """An element together with its exact multiplicative order."""

    element: Element
    order: int


def build_field(p: int, e: int, ceiling: int | None = None) -> FieldCtx:
    """Construct F_{p^e} deterministically.

    The modulus is the lexicographically smallest monic irreducible
    polynomial of degree e over F_p (high-degree coefficients compared
    first); for e = 1 it is x.  Rejects non-prime p and p^e over the
    ceiling (default 2^16).
    """
    if ceiling is None:
        ceiling = DEFAULT_FIELD_CEILING
    if e < 1:
        raise ValueError(f"extension degree must be >= 1, got {e}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = p**e
    if q > ceiling:
        raise ValueError(f"q = {q} exceeds the field ceiling {ceiling}")
    if e == 1:
        return FieldCtx(p, 1, (0, 1))
    base = FieldCtx(p, 1, (0, 1))
    for k in range(q):
        coeffs = []
        kk = k
        for _ in range(e):
            coeffs.append(kk % p)
            kk //= p
        f = [(c,) for c in coeffs] + [(1,)]
        if rabin_irreducible(base, f):
            return FieldCtx(p, e, tuple(coeffs) + (1,))
    raise ArithmeticError(f"no irreducible degree-{e} polynomial over F_{p}")  # pragma: no cover


def multiplicative_order(
    ctx: FieldCtx, a: Element, q_minus_1: Factorization | None = None
) -> OrderRecord:
    """Exact order of a in F_q* by divisor refinement.

    Starts from q-1 and strips each prime of q-1 while the power stays 1.
    """
    if a == ctx.zero:
        raise ValueError("the zero element has no multiplicative order")
    if q_minus_1 is None:
        q_minus_1 = factor(ctx.q - 1)
    elif q_minus_1.value != ctx.q - 1:
        raise ValueError("factorization does not match q - 1")
    m = ctx.q - 1
    one = ctx.one
    for ell, _ in q_minus_1.factors:
        while m % ell == 0 and ctx.pow(a, m // ell) == one:
            m //= ell
    return OrderRecord(a, m)


def criterion_irreducible(q_minus_1: Factorization, t: int, ord_a: int) -> bool:
    """Arithmetic irreducibility criterion for the binomial x^t - a.

    True iff (1) every prime divisor of t divides ord(a), (2)
    gcd(t, (q-1)/ord(a)) = 1, and (3) 4 | t implies q = 1 (mod 4).
    Requires t >= 2 and ord_a | q-1.
    """
    if t < 2:
        raise ValueError(f"the criterion requires degree t >= 2, got {t}")
    qm1 = q_minus_1.value
    if ord_a < 1 or qm1 % ord_a != 0:
        raise ValueError(f"ord_a = {ord_a} does not divide q-1 = {qm1}")
    for ell, _ in factor(t).factors:
        if ord_a % ell != 0:
            return False
    if math.gcd(t, qm1 // ord_a) != 1:
        return False
    if t % 4 == 0 and qm1 % 4 != 0:
        return False
    return True


# -- generic Rabin test ------------------------------------------------------


def _poly_deg(ctx: FieldCtx, f: list[Element]) -> int:
    d = len(f) - 1
    while d >= 0 and f[d] == ctx.zero:
        d -= 1
    return d


def _poly_mulmod(ctx: FieldCtx, a: list[Element], b: list[Element], f: list[Element]) -> list[Element]:
    # f monic of degree t; a, b of degree < t
    t = len(f) - 1
    zero = ctx.zero
    prod = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai != zero:
            for j, bj in enumerate(b):
                if bj != zero:
                    prod[i + j] = ctx.add(prod[i + j], ctx.mul(ai, bj))
    for k in range(len(prod) - 1, t - 1, -1):
        c = prod[k]
        if c != zero:
            prod[k] = zero
            for i in range(t):
                fi = f[i]
                if fi != zero:
                    prod[k - t + i] = ctx.sub(prod[k - t + i], ctx.mul(c, fi))
    out = prod[:t]
    out += [zero] * (t - len(out))
    return out


def _poly_powmod(ctx: FieldCtx, base: list[Element], n: int, f: list[Element]) -> list[Element]:
    t = len(f) - 1
    result = [ctx.one] + [ctx.zero] * (t - 1)
    b = base[:]
    while n:
        if n & 1:
            result = _poly_mulmod(ctx, result, b, f)
        b = _poly_mulmod(ctx, b, b, f)
        n >>= 1
    return result


def _poly_gcd_degree(ctx: FieldCtx, a: list[Element], b: list[Element]) -> int:
    a = a[:]
    b = b[:]
    da, db = _poly_deg(ctx, a), _poly_deg(ctx, b)
    if da < db:
        a, b, da, db = b, a, db, da
    while db >= 0:
        if db == 0:
            return 0
        ilc = ctx.inv(b[db])
        for sh in range(da - db, -1, -1):
            c = ctx.mul(a[db + sh], ilc)
            if c != ctx.zero:
                for j in range(db):
                    if b[j] != ctx.zero:
                        a[j + sh] = ctx.sub(a[j + sh], ctx.mul(c, b[j]))
                a[db + sh] = ctx.zero
        da = db - 1
        while da >= 0 and a[da] == ctx.zero:
            da -= 1
        a, b = b, a
        da, db = db, da
    return da


def rabin_irreducible(ctx: FieldCtx, f) -> bool:
    """Rabin irreducibility test for a monic polynomial f over F_q.

    f is a little-endian sequence of ctx elements.  Decides via
    x^(q^t) = x (mod f) plus gcd(x^(q^(t/l)) - x, f) = 1 for each prime
    l | t, computing the iterates by repeated squaring in F_q[x]/(f).
    """
    f = [ctx.element(c) if not isinstance(c, tuple) else c for c in f]
    t = len(f) - 1
    if t < 1:
        raise ValueError("polynomial must have degree at least 1")
    if f[t] != ctx.one:
        raise ValueError("polynomial must be monic")
    if t == 1:
        return True
    checkpoints = sorted({t // ell for ell, _ in factor(t).factors})
    cpset = set(checkpoints)
    x = [ctx.zero, ctx.one] + [ctx.zero] * (t - 2)
    h = x[:]
    q = ctx.q
    for k in range(1, t + 1):
        h = _poly_powmod(ctx, h, q, f)
        if k in cpset:
            if h == x:
                return False
            diff = [ctx.sub(hi, xi) for hi, xi in zip(h, x)]
            if _poly_gcd_degree(ctx, diff, f[:]) > 0:
                return False
    return h == x


# -- exhaustive binomial censuses --------------------------------------------


@lru_cache(maxsize=64)
def _field_tables(ctx: FieldCtx):
    """Flat q*q multiplication/addition tables plus negation/inverse rows."""
    q = ctx.q
    if q > _TABLE_Q_LIMIT:
        raise ValueError(f"q = {q} too large for code tables (limit {_TABLE_Q_LIMIT})")
    elems = [ctx.from_code(c) for c in range(q)]
    codes = {e: i for i, e in enumerate(elems)}
    mul = array("H", bytes(2 * q * q))
    add = array("H", bytes(2 * q * q))
    for i, a in enumerate(elems):
        base = i * q
        for j in range(i, q):
            b = elems[j]
            m = codes[ctx.mul(a, b)]
            s = codes[ctx.add(a, b)]
            mul[base + j] = m
            mul[j * q + i] = m
            add[base + j] = s
            add[j * q + i] = s
    neg = array("H", (codes[ctx.neg(a)] for a in elems))
    inv = array("H", [0] + [codes[ctx.inv(a)] for a in elems[1:]])
    return mul, add, neg, inv


def _scan_reference(ctx: FieldCtx, t: int) -> bytes:
    out = bytearray(ctx.q)
    zero, one = ctx.zero, ctx.one
    for code in range(1, ctx.q):
        a = ctx.from_code(code)
        f = [ctx.neg(a)] + [zero] * (t - 1) + [one]
        out[code] = 1 if rabin_irreducible(ctx, f) else 0
    return bytes(out)


def _resolve_backend(backend: str | None):
    if backend is None:
        backend = kernel_backend()
    if backend == "compiled":
        if _compiled_kernel is None:
            raise ValueError("compiled kernel is not available")
        return _compiled_kernel
    if backend == "pure":
        return _pure_kernel
    raise ValueError(f"unknown backend {backend!r}")


def oracle_binomial_scan(
    ctx: FieldCtx,
    t: int,
    backend: str | None = None,
    q_ceiling: int | None = None,
    degree_ceiling: int | None = None,
) -> bytes:
    """Rabin-test every binomial x^t - a, a in F_q*.

    Returns bytes of length q: the entry at the code of a is 1 when
    x^t - a is irreducible.  For t = 1 every nonzero a counts (x - a).
    backend selects 'compiled', 'pure', or 'reference' (the generic
    polynomial route); default is the import-selected kernel.

    The scan is per-a, so any partition of the a-range sums to the same
    census regardless of scheduling.
    """
    q = ctx.q
    if q_ceiling is None:
        q_ceiling = scan_q_ceiling()
    if degree_ceiling is None:
        degree_ceiling = DEFAULT_SCAN_DEGREE_CEILING
    if q > q_ceiling:
        raise ValueError(f"q = {q} exceeds the oracle ceiling {q_ceiling}")
    if t < 1:
        raise ValueError(f"degree must be >= 1, got {t}")
    if t > degree_ceiling:
        raise ValueError(f"degree {t} exceeds the oracle degree ceiling {degree_ceiling}")
    if t == 1:
        return bytes([0] + [1] * (q - 1))
    if backend == "reference" or (backend is None and q > _TABLE_Q_LIMIT):
        return _scan_reference(ctx, t)
    impl = _resolve_backend(backend)
    t_primes = tuple(p for p, _ in factor(t).factors)
    mul, add, neg, inv = _field_tables(ctx)
    return impl.scan(q, t, t_primes, mul, add, neg, inv)


def oracle_binomial_count(
    ctx: FieldCtx,
    t: int,
    backend: str | None = None,
    q_ceiling: int | None = None,
    degree_ceiling: int | None = None,
) -> int:
    """Number of a in F_q* with x^t - a irreducible, by exhaustive Rabin tests."""
    if t == 1:
        # every x - a with a != 0
        q = ctx.q
        if q_ceiling is None:
            q_ceiling = scan_q_ceiling()
        if q > q_ceiling:
            raise ValueError(f"q = {q} exceeds the oracle ceiling {q_ceiling}")
        return q - 1
    return sum(oracle_binomial_scan(ctx, t, backend, q_ceiling, degree_ceiling))
