# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled binomial irreducibility scan.

Hot kernel behind the exhaustive censuses: for a fixed field F_q (given as
q x q code tables) and degree t, run the Rabin irreducibility test on
x^t - a for every a != 0.  Mirrors binomcensus._kernel_py exactly; the
pure module is the import-time fallback and the reference in benchmarks.

Frobenius iterates h_k = x^(q^k) mod f are produced by repeated squaring
to the q-th power; gcd checkpoints at t/l for prime l | t run in
increasing order so most reducible binomials abort after a few iterates.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

ctypedef unsigned short u16


cdef void _mulmod(int q, int t, int acode, const u16 *a, const u16 *b,
                  u16 *out, u16 *prod, const u16 *mul, const u16 *add) noexcept nogil:
    cdef int i, j, k, ai, bj, row, c
    memset(prod, 0, (2 * t - 1) * sizeof(u16))
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
    memcpy(out, prod, t * sizeof(u16))


cdef void _sqrmod(int q, int t, int acode, const u16 *a,
                  u16 *out, u16 *prod, const u16 *mul, const u16 *add) noexcept nogil:
    cdef int i, j, k, ai, aj, row, m, c
    memset(prod, 0, (2 * t - 1) * sizeof(u16))
    for i in range(t):
        ai = a[i]
        if ai:
            row = ai * q
            m = mul[row + ai]
            prod[2 * i] = add[prod[2 * i] * q + m]
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
    memcpy(out, prod, t * sizeof(u16))


cdef void _pow_q(int q, int t, int acode, u16 *h, const int *qbits, int nbits,
                 u16 *r, u16 *prod, const u16 *mul, const u16 *add) noexcept nogil:
    # h <- h^q mod (x^t - acode); r and prod are scratch
    cdef int i
    memcpy(r, h, t * sizeof(u16))
    for i in range(nbits):
        _sqrmod(q, t, acode, r, r, prod, mul, add)
        if qbits[i]:
            _mulmod(q, t, acode, r, h, r, prod, mul, add)
    memcpy(h, r, t * sizeof(u16))


cdef int _gcd_degree(int q, int t, int acode, const u16 *h,
                     u16 *a, u16 *b, const u16 *mul, const u16 *add,
                     const u16 *neg, const u16 *inv) noexcept nogil:
    # degree of gcd(h - x, x^t - acode); 0 means constant gcd
    cdef int dega, degb, sh, j, c, cm, ilc, bj
    cdef u16 *tmp
    memset(a, 0, (t + 1) * sizeof(u16))
    a[t] = 1
    a[0] = neg[acode]
    memcpy(b, h, t * sizeof(u16))
    b[t] = 0
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
        tmp = a
        a = b
        b = tmp
        sh = dega
        dega = degb
        degb = sh
    return dega


cdef int _is_x(const u16 *h, int t) noexcept nogil:
    cdef int i
    if h[0] != 0 or h[1] != 1:
        return 0
    for i in range(2, t):
        if h[i]:
            return 0
    return 1


cdef int _irreducible(int q, int t, int acode, const int *cps, int ncp,
                      const int *qbits, int nbits, u16 *h, u16 *r, u16 *prod,
                      u16 *ga, u16 *gb, const u16 *mul, const u16 *add,
                      const u16 *neg, const u16 *inv) noexcept nogil:
    cdef int k, ci
    memset(h, 0, t * sizeof(u16))
    h[1] = 1
    ci = 0
    for k in range(1, t + 1):
        _pow_q(q, t, acode, h, qbits, nbits, r, prod, mul, add)
        if ci < ncp and k == cps[ci]:
            ci += 1
            if _is_x(h, t):
                return 0
            if _gcd_degree(q, t, acode, h, ga, gb, mul, add, neg, inv) > 0:
                return 0
    return _is_x(h, t)


def scan(int q, int t, tuple t_primes,
         const u16[::1] mul, const u16[::1] add,
         const u16[::1] neg, const u16[::1] inv):
    """Irreducibility of x^t - a over F_q for every a != 0.

    Returns bytes of length q whose entry at the code of a is 1 exactly
    when x^t - a is irreducible.  Entry 0 (the zero element) is always 0.
    """
    cdef bytearray out = bytearray(q)
    cdef int acode, i, ncp, nbits
    if t == 1:
        for acode in range(1, q):
            out[acode] = 1
        return bytes(out)

    cps_py = sorted({t // ell for ell in t_primes})
    ncp = len(cps_py)
    qbits_py = [int(ch) for ch in bin(q)[3:]]
    nbits = len(qbits_py)

    cdef int *cps = <int *> malloc(ncp * sizeof(int))
    cdef int *qbits = <int *> malloc((nbits if nbits else 1) * sizeof(int))
    cdef u16 *buf = <u16 *> malloc((7 * t + 4) * sizeof(u16))
    if cps == NULL or qbits == NULL or buf == NULL:
        free(cps); free(qbits); free(buf)
        raise MemoryError
    for i in range(ncp):
        cps[i] = cps_py[i]
    for i in range(nbits):
        qbits[i] = qbits_py[i]
    cdef u16 *h = buf
    cdef u16 *r = buf + t
    cdef u16 *prod = buf + 2 * t          # length 2t - 1
    cdef u16 *ga = buf + 4 * t            # length t + 1
    cdef u16 *gb = buf + 5 * t + 2        # length t + 1

    cdef const u16 *pm = &mul[0]
    cdef const u16 *pa = &add[0]
    cdef const u16 *pn = &neg[0]
    cdef const u16 *pi = &inv[0]
    cdef unsigned char[::1] ov = out

    try:
        with nogil:
            for acode in range(1, q):
                ov[acode] = _irreducible(q, t, acode, cps, ncp, qbits, nbits,
                                         h, r, prod, ga, gb, pm, pa, pn, pi)
    finally:
        free(cps)
        free(qbits)
        free(buf)
    return bytes(out)
