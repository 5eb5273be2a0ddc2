"""Pure-Python binomial irreducibility scan.

Fallback twin of the compiled extension `binomcensus._kernel`; same
signature, same algorithm, same table-driven field arithmetic, so results
are bit-identical.  Field elements are small-integer codes into the q x q
multiplication/addition tables supplied by the caller.

The test run for a single binomial x^t - a is the Rabin irreducibility
test: walk the iterates h_k = x^(q^k) mod f by raising to the q-th power
(square-and-multiply), check gcd(h_{t/l} - x, f) = 1 at every maximal
proper checkpoint t/l (l a prime divisor of t), and finally require
h_t = x.  Checkpoints are visited in increasing order so reducible
binomials abort as early as possible.
"""

from __future__ import annotations

__all__ = ["scan"]


def _mulmod(q, t, acode, a, b, mul, add):
    """a * b mod (x^t - acode); a, b are coefficient lists of length t."""
    prod = [0] * (2 * t - 1)
    for i in range(t):
        ai = a[i]
        if ai:
            row = ai * q
            for j in range(t):
                bj = b[j]
                if bj:
                    k = i + j
                    prod[k] = add[prod[k] * q + mul[row + bj]]
    for k in range(2 * t - 2, t - 1, -1):
        c = prod[k]
        if c:
            prod[k - t] = add[prod[k - t] * q + mul[c * q + acode]]
    return prod[:t]


def _sqrmod(q, t, acode, a, mul, add):
    prod = [0] * (2 * t - 1)
    for i in range(t):
        ai = a[i]
        if ai:
            row = ai * q
            d = mul[row + ai]
            prod[2 * i] = add[prod[2 * i] * q + d]
            for j in range(i + 1, t):
                aj = a[j]
                if aj:
                    m = mul[row + aj]
                    m = add[m * q + m]
                    k = i + j
                    prod[k] = add[prod[k] * q + m]
    for k in range(2 * t - 2, t - 1, -1):
        c = prod[k]
        if c:
            prod[k - t] = add[prod[k - t] * q + mul[c * q + acode]]
    return prod[:t]


def _pow_q(q, t, acode, h, qbits, mul, add):
    """h^q mod (x^t - acode), exponent q given as bits below its MSB."""
    r = h[:]
    for bit in qbits:
        r = _sqrmod(q, t, acode, r, mul, add)
        if bit:
            r = _mulmod(q, t, acode, r, h, mul, add)
    return r


def _gcd_degree(q, t, acode, h, mul, add, neg, inv):
    """Degree of gcd(h - x, x^t - acode); 0 means the gcd is constant."""
    a = [0] * (t + 1)
    a[t] = 1
    a[0] = neg[acode]
    b = h[:] + [0]
    b[1] = add[b[1] * q + neg[1]]
    dega = t
    degb = t - 1
    while degb >= 0 and b[degb] == 0:
        degb -= 1
    while degb >= 0:
        if degb == 0:
            return 0
        ilc = inv[b[degb]]
        for sh in range(dega - degb, -1, -1):
            c = mul[a[degb + sh] * q + ilc]
            if c:
                cm = c * q
                for j in range(degb):
                    bj = b[j]
                    if bj:
                        a[j + sh] = add[a[j + sh] * q + neg[mul[cm + bj]]]
                a[degb + sh] = 0
        dega = degb - 1
        while dega >= 0 and a[dega] == 0:
            dega -= 1
        a, b = b, a
        dega, degb = degb, dega
    return dega


def _irreducible(q, t, acode, checkpoints, qbits, mul, add, neg, inv):
    h = [0] * t
    h[1] = 1
    x = h[:]
    ci = 0
    ncp = len(checkpoints)
    for k in range(1, t + 1):
        h = _pow_q(q, t, acode, h, qbits, mul, add)
        if ci < ncp and k == checkpoints[ci]:
            ci += 1
            if h == x:
                return 0
            if _gcd_degree(q, t, acode, h, mul, add, neg, inv) > 0:
                return 0
    return 1 if h == x else 0


def scan(q, t, t_primes, mul, add, neg, inv):
    """Irreducibility of x^t - a over F_q for every a != 0.

    Returns bytes of length q whose entry at the code of a is 1 exactly
    when x^t - a is irreducible.  Entry 0 (the zero element) is always 0.
    """
    out = bytearray(q)
    if t == 1:
        for a in range(1, q):
            out[a] = 1
        return bytes(out)
    checkpoints = sorted({t // ell for ell in t_primes})
    qbits = [int(ch) for ch in bin(q)[3:]]
    for acode in range(1, q):
        out[acode] = _irreducible(q, t, acode, checkpoints, qbits, mul, add, neg, inv)
    return bytes(out)
