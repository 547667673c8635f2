"""APN exponents of x^r over GF(3^n) satisfying the Zha-Wang condition.

An exponent ``r`` qualifies when ``(3^m + 1) r - 2 = k (3^n - 1)`` with ``r``
even, ``k`` odd and ``gcd(m, n) = 1``.  For every such ``m`` there is exactly
one even residue, obtained in closed form from ``u = m^{-1} mod n``.
All arithmetic uses Python integers before reducing modulo ``3^n - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, InvariantViolation
from .funcs import ExponentClass, exponent_class


@dataclass(frozen=True)
class ZWWitness:
    n: int
    m: int
    u: int
    r: int
    k: int
    parity_branch: str  # "u-even" or "u-odd"
    r_even: int  # r itself (u even) or 3r (u odd), the residue satisfying the condition


def _require_params(n: int, m: int) -> None:
    if n % 2 == 0:
        raise DomainError(f"n = {n} is even; the condition cannot hold for even n")
    if math.gcd(m, n) != 1:
        raise DomainError(f"gcd(m, n) = gcd({m}, {n}) != 1")


def zw_condition_check(n: int, m: int, r: int) -> int | None:
    """Return the odd cofactor ``k`` if ``r`` satisfies the condition, else ``None``.

    ``r`` is reduced into ``[0, 3^n - 1)`` first; parity of ``r`` and of ``k``
    does not depend on the representative.
    """
    _require_params(n, m)
    mod = 3**n - 1
    r %= mod
    if r % 2:
        return None
    num = (3**m + 1) * r - 2
    if num % mod:
        return None
    k = num // mod
    return k if k % 2 else None


def _reduce(r: int, mod: int) -> int:
    r %= mod
    return r if r else mod


def zw_exponent(n: int, m: int) -> tuple[ExponentClass, ZWWitness]:
    """Closed-form APN exponent for the pair ``(n, m)``.

    >>> cls, w = zw_exponent(5, 2)
    >>> w.r, w.u, w.parity_branch, cls.canon
    (234, 3, 'u-odd', 26)
    """
    _require_params(n, m)
    if not 1 <= m <= n - 1:
        raise DomainError(f"m must lie in [1, n-1], got {m}")
    mod = 3**n - 1
    u = pow(m, -1, n)
    if u % 2 == 0:
        num, den = 3 ** (u * m) - 1, 3**m + 1
        branch = "u-even"
    else:
        num, den = 1 - 3 ** ((n - u) * m), 1 + 3**m
        branch = "u-odd"
    if num % den:
        raise InvariantViolation(f"closed form not integral for (n, m) = ({n}, {m})")
    r = _reduce(num // den, mod)
    r_even = r if branch == "u-even" else 3 * r % mod
    k = zw_condition_check(n, m, r_even)
    if k is None:
        raise InvariantViolation(f"zw_exponent({n}, {m}) = {r} fails the defining condition")
    return exponent_class(r, 3**n), ZWWitness(n, m, u, r, k, branch, r_even)


def zw_unique_even(n: int, m: int) -> int:
    """Brute-force the even residues mod ``3^n - 1``; exactly one must qualify."""
    _require_params(n, m)
    mod = 3**n - 1
    hits = [r for r in range(0, mod, 2) if zw_condition_check(n, m, r) is not None]
    if len(hits) != 1:
        raise InvariantViolation(f"expected one even solution for (n, m) = ({n}, {m}), found {hits}")
    return hits[0]


class FamilyMember(NamedTuple):
    m: int
    r: int
    branch: str  # "i" (m | n+1) or "ii" (m | n-1)


def divisor_family(n: int) -> list[FamilyMember]:
    """Exponents from the divisors ``m`` of ``n + 1`` and ``n - 1`` with even quotient."""
    if n % 2 == 0:
        raise DomainError("n must be odd")
    mod = 3**n - 1
    out = []
    for m in range(2, n + 2):
        if (n + 1) % m == 0 and ((n + 1) // m) % 2 == 0:
            out.append(FamilyMember(m, _reduce((3 ** (n + 1) - 1) // (3**m + 1), mod), "i"))
    for m in range(1, n):
        if (n - 1) % m == 0 and ((n - 1) // m) % 2 == 0:
            out.append(FamilyMember(m, _reduce((1 - 3 ** (n - 1)) // (1 + 3**m), mod), "ii"))
    return out


def pow2_plus_exponent(n: int, ell: int) -> int:
    """``(3^{n+1} - 1) / (3^m + 1)`` with ``m = (n + 1) / 2^ell``."""
    if ell < 1 or (n + 1) % 2**ell:
        raise DomainError(f"2^{ell} does not divide n + 1 = {n + 1}")
    m = (n + 1) // 2**ell
    return _reduce((3 ** (n + 1) - 1) // (3**m + 1), 3**n - 1)


def pow2_minus_exponent(n: int, ell: int) -> int:
    """``(1 - 3^{n-1}) / (1 + 3^m)`` with ``m = (n - 1) / 2^ell``."""
    if ell < 1 or n < 3 or (n - 1) % 2**ell:
        raise DomainError(f"2^{ell} does not divide n - 1 = {n - 1}")
    m = (n - 1) // 2**ell
    return _reduce((1 - 3 ** (n - 1)) // (1 + 3**m), 3**n - 1)


def mirror_equivalence(n: int, m: int) -> bool:
    """Do ``m`` and ``n - m`` give the same coset modulo ``3^n - 1``?"""
    a, _ = zw_exponent(n, m)
    b, _ = zw_exponent(n, n - m)
    return a.coset_full == b.coset_full


def zw_all(n: int, dedup: bool = True) -> list[tuple[ExponentClass, ZWWitness]]:
    """All ``m`` coprime to ``n``; with ``dedup`` only ``m <= (n - 1) / 2``."""
    top = (n - 1) // 2 if dedup else n - 1
    return [zw_exponent(n, m) for m in range(1, top + 1) if math.gcd(m, n) == 1]


def pow2_ells(n: int, plus: bool) -> list[int]:
    """Valid ``ell`` for the ``n + 1`` (``plus``) or ``n - 1`` power-of-two family."""
    base = n + 1 if plus else n - 1
    out = []
    ell = 1
    while base > 0 and base % 2**ell == 0:
        out.append(ell)
        ell += 1
    return out
