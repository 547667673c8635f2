"""Compiled inner loops.

Everything here works on raw element ids and the lookup tables of a
``FieldCtx``: ``log`` (with ``log[0] == -1``), ``exp``, ``zech`` where
``zech[k] = log(1 + g^k)`` or ``-1`` when ``1 + g^k == 0``, and ``neg``.
"""

import numba
import numpy as np
from numba import njit, prange

# the system TBB is too old for numba; prefer OpenMP and fall back to workqueue
numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@njit(cache=True)
def build_exp_table(p, n, modulus, gen_digits, q):
    """Powers of the generator as element ids, by repeated multiplication."""
    exp = np.empty(q - 1, dtype=np.int32)
    pw = np.empty(n, dtype=np.int64)
    acc = 1
    for i in range(n):
        pw[i] = acc
        acc *= p
    deg = 0
    for j in range(n):
        if gen_digits[j] != 0:
            deg = j
    cur = np.zeros(n, dtype=np.int64)
    cur[0] = 1
    nxt = np.zeros(n, dtype=np.int64)
    t = np.zeros(n, dtype=np.int64)
    for k in range(q - 1):
        ident = 0
        for i in range(n):
            ident += cur[i] * pw[i]
        exp[k] = ident
        # cur * g = sum_j g_j * x^j * cur; x * t reduces via the monic modulus
        for i in range(n):
            nxt[i] = 0
            t[i] = cur[i]
        for j in range(deg + 1):
            gj = gen_digits[j]
            if gj != 0:
                for i in range(n):
                    nxt[i] += gj * t[i]
            if j < deg:
                top = t[n - 1]
                for i in range(n - 1, 0, -1):
                    t[i] = (t[i - 1] - top * modulus[i]) % p
                t[0] = (-top * modulus[0]) % p
        for i in range(n):
            cur[i] = nxt[i] % p
    return exp


@njit(cache=True, inline="always")
def _add(a, b, log, exp, zech, qm1):
    if a == 0:
        return b
    if b == 0:
        return a
    la = log[a]
    k = log[b] - la
    if k < 0:
        k += qm1
    z = zech[k]
    if z < 0:
        return 0
    s = la + z
    if s >= qm1:
        s -= qm1
    return exp[s]


@njit(cache=True, inline="always")
def _sub(a, b, log, exp, zech, neg, qm1):
    return _add(a, neg[b], log, exp, zech, qm1)


@njit(cache=True, inline="always")
def _binomial_value(x, r, lcp, lcm, log, exp, qm1):
    # x^r * c with c = 1 + u*chi(x); lcp / lcm are log(c) for chi = +1 / -1
    # (-1 when that factor vanishes)
    if x == 0:
        return 0
    lx = log[x]
    lc = lcp if lx % 2 == 0 else lcm
    if lc < 0:
        return 0
    return exp[(r * lx + lc) % qm1]


@njit(cache=True)
def derivative(values, a, log, exp, zech, neg, qm1):
    """``out[x] = F(x + a) - F(x)`` for a tabulated ``F``."""
    q = values.shape[0]
    out = np.empty(q, dtype=np.int32)
    for x in range(q):
        xa = _add(x, a, log, exp, zech, qm1)
        out[x] = _sub(values[xa], values[x], log, exp, zech, neg, qm1)
    return out


@njit(cache=True)
def _screen_one(r, lcp, lcm, limit, log, exp, zech, neg, plus_one, qm1, seen, stamp):
    # Early-abort a=1 row: returns the first b != 0 whose count exceeds
    # ``limit`` (1 or 2), or -1. ``seen`` holds stamp*4 + count per b.
    q = plus_one.shape[0]
    base = stamp * 4
    fx = 0  # F(0)
    for x in range(q):
        x1 = plus_one[x]
        f1 = _binomial_value(x1, r, lcp, lcm, log, exp, qm1)
        fx = _binomial_value(x, r, lcp, lcm, log, exp, qm1)
        d = _sub(f1, fx, log, exp, zech, neg, qm1)
        if d != 0:
            s = seen[d]
            if s < base:
                seen[d] = base + 1
            else:
                c = s - base + 1
                if c > limit:
                    return d
                seen[d] = base + c
    return -1


@njit(cache=True, parallel=True)
def screen_many(rs, lcp, lcm, limit, log, exp, zech, neg, plus_one, qm1, nchunks):
    """Run the early-abort screen for every exponent in ``rs``.

    Returns, per exponent, the witness ``b`` (or -1 if the row passes).
    Each chunk owns its scratch array, so results do not depend on
    the thread count.
    """
    m = rs.shape[0]
    out = np.full(m, -1, dtype=np.int64)
    q = plus_one.shape[0]
    for c in prange(nchunks):
        lo = c * m // nchunks
        hi = (c + 1) * m // nchunks
        if lo >= hi:
            continue
        seen = np.zeros(q, dtype=np.int64)
        for i in range(lo, hi):
            out[i] = _screen_one(rs[i], lcp, lcm, limit, log, exp, zech, neg, plus_one,
                                 qm1, seen, i - lo + 1)
    return out


@njit(cache=True)
def bct_row_pairs(values, a, log, exp, zech, neg, qm1):
    """Boomerang row by direct enumeration of all ordered pairs."""
    q = values.shape[0]
    counts = np.zeros(q, dtype=np.int64)
    shifted = np.empty(q, dtype=np.int32)
    for x in range(q):
        shifted[x] = values[_add(x, a, log, exp, zech, qm1)]
    for x in range(q):
        fx = values[x]
        fxa = shifted[x]
        for y in range(q):
            d1 = _sub(fx, values[y], log, exp, zech, neg, qm1)
            if d1 == 0:
                continue
            d2 = _sub(fxa, shifted[y], log, exp, zech, neg, qm1)
            if d1 == d2:
                counts[d1] += 1
    return counts


@njit(cache=True)
def bct_row_grouped(values, deriv, order, labels, nlabels, log, exp, zech, neg, qm1):
    """Boomerang counts from pairs sharing a derivative value.

    ``order`` sorts the inputs by ``deriv``.  Two inputs solve the boomerang
    system for ``b`` exactly when their derivative values agree and their
    outputs differ by ``b``; only those pairs are visited.  Counts are split
    by ``(labels[x], labels[y])`` into an array of shape
    ``(nlabels, nlabels, q)``.
    """
    q = values.shape[0]
    counts = np.zeros((nlabels, nlabels, q), dtype=np.int64)
    start = 0
    while start < q:
        g = deriv[order[start]]
        stop = start + 1
        while stop < q and deriv[order[stop]] == g:
            stop += 1
        for i in range(start, stop):
            x = order[i]
            fx = values[x]
            lx = labels[x]
            for j in range(start, stop):
                y = order[j]
                d = _sub(fx, values[y], log, exp, zech, neg, qm1)
                if d != 0:
                    counts[lx, labels[y], d] += 1
        start = stop
    return counts
