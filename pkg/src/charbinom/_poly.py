"""Dense polynomials over GF(p) as coefficient lists, constant term first.

Only what irreducibility testing and primitive-element search need.
The zero polynomial is ``[]``; every other value has a nonzero last entry.
"""

from __future__ import annotations


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def sub(a, b, p):
    m = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(m)]
    return trim(out)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return trim(out)


def divmod_(a, b, p):
    """Quotient and remainder of ``a / b``; ``b`` must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = trim(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - db, 0)
    rem = list(a)
    while len(rem) - 1 >= db and rem:
        shift = len(rem) - 1 - db
        c = rem[-1] * inv_lead % p
        quot[shift] = c
        for j, bj in enumerate(b):
            rem[shift + j] = (rem[shift + j] - c * bj) % p
        rem = trim(rem)
    return trim(quot), rem


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def gcd(a, b, p):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, mod(a, b, p)
    if a:
        inv_lead = pow(a[-1], p - 2, p)
        a = [c * inv_lead % p for c in a]
    return a


def powmod(a, e, f, p):
    result = [1]
    base = mod(a, f, p)
    while e > 0:
        if e & 1:
            result = mod(mul(result, base, p), f, p)
        base = mod(mul(base, base, p), f, p)
        e >>= 1
    return result


def to_str(a, var="x"):
    """Human-readable form, highest degree first (``x^3 + 2x + 1``)."""
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms)


def irreducibility_witness(f, p):
    """Return ``None`` if ``f`` is irreducible over GF(p), else a reason string.

    Ben-Or test: a degree-n polynomial is irreducible iff
    gcd(f, x^(p^i) - x) = 1 for every 1 <= i <= n // 2.
    """
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        return "degree < 1"
    if n == 1:
        return None
    x = [0, 1]
    xp = x
    for i in range(1, n // 2 + 1):
        xp = powmod(xp, p, f, p)
        g = gcd(f, sub(xp, x, p), p)
        if len(g) > 1:
            return f"gcd(f, x^({p}^{i}) - x) = {to_str(g)} is a nontrivial factor"
    return None
