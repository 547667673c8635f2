"""Arithmetic in GF(p^n) for odd p with discrete-log tables.

Elements are integer ids in ``[0, q)``: the base-p digits of an id are the
coefficients of the polynomial-basis representative, constant term first.
Id 0 is zero and id 1 is the unit.  Addition works digit-wise; products,
inverses, powers and the quadratic character go through the log tables.

Example
-------
>>> ctx = build_field(3, 3)
>>> ctx.modulus_str()
'1201'
>>> chi(ctx, ctx.gen)
-1
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass, field

import numpy as np

from . import _kernels, _poly
from .errors import DomainError, ModulusError, ResourceCapError

DEFAULT_MAX_Q = 3**16
MAX_Q_ENV = "CHARBINOM_MAX_Q"


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def parse_modulus(text: str, p: int) -> tuple[int, ...]:
    """Parse a base-p digit string, constant term first ("1201" is x^3+2x+1)."""
    text = text.strip()
    if not text or any(not ch.isdigit() for ch in text):
        raise ModulusError(f"modulus must be a string of base-{p} digits, got {text!r}")
    digits = tuple(int(ch) for ch in text)
    if any(d >= p for d in digits):
        raise ModulusError(f"modulus digit out of range for p={p}: {text!r}")
    return digits


def default_max_q() -> int:
    raw = os.environ.get(MAX_Q_ENV)
    return int(raw) if raw else DEFAULT_MAX_Q


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Immutable arithmetic context for GF(p^n).

    Attributes
    ----------
    p, n, q : int
        Characteristic, extension degree and field size ``p**n``.
    modulus : tuple of int
        Monic irreducible of degree n, constant term first.
    gen : int
        Id of the fixed multiplicative generator (``exp[1]``).
    log : ndarray
        ``log[x]`` is the discrete log of a nonzero id; ``log[0] == -1``.
    exp : ndarray
        ``exp[k]`` is the id of ``gen**k`` for ``0 <= k < q - 1``.
    """

    p: int
    n: int
    q: int
    modulus: tuple
    gen: int
    log: np.ndarray = field(repr=False)
    exp: np.ndarray = field(repr=False)
    zech: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    plus_one: np.ndarray = field(repr=False)
    chi_table: np.ndarray = field(repr=False)

    @property
    def qm1(self) -> int:
        return self.q - 1

    @property
    def half(self) -> int:
        return (self.q - 1) // 2

    def modulus_str(self) -> str:
        return "".join(str(d) for d in self.modulus)

    def tables(self):
        """Positional table bundle expected by the compiled kernels."""
        return self.log, self.exp, self.zech, self.neg_table, self.qm1

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.n):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def from_digits(self, digits) -> int:
        ident = 0
        for d in reversed(list(digits)):
            ident = ident * self.p + int(d) % self.p
        return ident

    def embed(self, c: int) -> int:
        """Id of the prime-field constant ``c``."""
        return c % self.p

    def in_prime_field(self, a: int) -> bool:
        return 0 <= a < self.p

    def element(self, text) -> int:
        """Parse an element given as an integer id or ``d<digits>`` (constant first)."""
        if isinstance(text, (int, np.integer)):
            a = int(text)
        else:
            text = str(text).strip()
            if text[:1] in ("d", "D"):
                digits = text[1:]
                if len(digits) > self.n or any(not ch.isdigit() or int(ch) >= self.p for ch in digits):
                    raise DomainError(f"bad digit string {text!r} for GF({self.p}^{self.n})")
                a = self.from_digits(int(ch) for ch in digits)
            else:
                a = int(text)
        if not 0 <= a < self.q:
            raise DomainError(f"element id {a} outside [0, {self.q})")
        return a

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, n={self.n}, modulus='{self.modulus_str()}', gen={self.gen})"


def _candidate_moduli(p: int, n: int):
    # monic degree-n polynomials ordered by (c_{n-1}, ..., c_0) ascending
    for k in range(p**n):
        low = []
        for _ in range(n):
            k, d = divmod(k, p)
            low.append(d)
        yield tuple(low) + (1,)


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    for cand in _candidate_moduli(p, n):
        if _poly.irreducibility_witness(list(cand), p) is None:
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _has_full_order(g: list[int], f: list[int], p: int, q: int, factors) -> bool:
    for ell in factors:
        if _poly.powmod(g, (q - 1) // ell, f, p) == [1]:
            return False
    return True


def _digits_of(ident: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        ident, d = divmod(ident, p)
        out.append(d)
    return out


@functools.lru_cache(maxsize=16)
def _build(p: int, n: int, modulus: tuple) -> FieldCtx:
    q = p**n
    f = list(modulus)
    factors = prime_factors(q - 1)
    gen = None
    for cand in range(1, q):
        g = _poly.trim(_digits_of(cand, p, n))
        if q == 2 or _has_full_order(g, f, p, q, factors):
            gen = cand
            break
    assert gen is not None

    exp = _kernels.build_exp_table(
        p, n, np.array(f, dtype=np.int64), np.array(_digits_of(gen, p, n), dtype=np.int64), q
    )
    log = np.full(q, -1, dtype=np.int32)
    log[exp] = np.arange(q - 1, dtype=np.int32)
    if (log[1:] < 0).any():  # pragma: no cover - gen has full order
        raise AssertionError("exp table is not a permutation of the nonzero elements")

    ids = np.arange(q, dtype=np.int64)
    low = ids % p
    plus_one = (ids - low + (low + 1) % p).astype(np.int32)
    neg = np.zeros(q, dtype=np.int64)
    pw = 1
    for _ in range(n):
        d = (ids // pw) % p
        neg += ((p - d) % p) * pw
        pw *= p
    neg = neg.astype(np.int32)
    zech = log[plus_one[exp]].copy()
    chi = np.zeros(q, dtype=np.int8)
    chi[1:] = np.where(log[1:] % 2 == 0, 1, -1)

    arrays = dict(log=log, exp=exp, zech=zech, neg_table=neg, plus_one=plus_one, chi_table=chi)
    for arr in arrays.values():
        arr.setflags(write=False)
    return FieldCtx(p=p, n=n, q=q, modulus=tuple(modulus), gen=gen, **arrays)


def build_field(p: int = 3, n: int = 1, modulus=None, max_q: int | None = None) -> FieldCtx:
    """Construct (or fetch from cache) the arithmetic context for GF(p^n).

    Parameters
    ----------
    p : int
        Odd prime.
    n : int
        Extension degree, at least 1.
    modulus : sequence of int or str, optional
        Monic irreducible of degree n, constant term first.  Defaults to the
        lexicographically smallest one, comparing ``(c_{n-1}, ..., c_0)``.
    max_q : int, optional
        Refuse fields larger than this (default ``$CHARBINOM_MAX_Q`` or 3^16).
    """
    if not isinstance(p, int) or p % 2 == 0 or not _is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p!r}")
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    cap = default_max_q() if max_q is None else max_q
    if p**n > cap:
        raise ResourceCapError(f"field size {p}^{n} = {p**n} exceeds the memory cap {cap}")
    if modulus is None:
        mod = smallest_irreducible(p, n)
    else:
        mod = parse_modulus(modulus, p) if isinstance(modulus, str) else tuple(int(c) for c in modulus)
        if len(mod) != n + 1:
            raise ModulusError(f"modulus must have degree {n} ({n + 1} digits), got {len(mod)} digits")
        if mod[-1] != 1:
            raise ModulusError(f"modulus must be monic, leading digit is {mod[-1]}")
        if any(not 0 <= c < p for c in mod):
            raise ModulusError(f"modulus digits must lie in [0, {p})")
        reason = _poly.irreducibility_witness(list(mod), p)
        if reason is not None:
            raise ModulusError(f"modulus {_poly.to_str(list(mod))} is reducible: {reason}")
    return _build(p, n, tuple(mod))


def _check(ctx: FieldCtx, a) -> int:
    a = int(a)
    if not 0 <= a < ctx.q:
        raise DomainError(f"element id {a} outside [0, {ctx.q})")
    return a


def add(ctx: FieldCtx, a: int, b: int) -> int:
    a, b = _check(ctx, a), _check(ctx, b)
    p = ctx.p
    out, pw = 0, 1
    for _ in range(ctx.n):
        out += ((a % p + b % p) % p) * pw
        a //= p
        b //= p
        pw *= p
    return out


def neg(ctx: FieldCtx, a: int) -> int:
    a = _check(ctx, a)
    p = ctx.p
    out, pw = 0, 1
    for _ in range(ctx.n):
        out += ((-(a % p)) % p) * pw
        a //= p
        pw *= p
    return out


def sub(ctx: FieldCtx, a: int, b: int) -> int:
    return add(ctx, a, neg(ctx, b))


def mul(ctx: FieldCtx, a: int, b: int) -> int:
    a, b = _check(ctx, a), _check(ctx, b)
    if a == 0 or b == 0:
        return 0
    return int(ctx.exp[(int(ctx.log[a]) + int(ctx.log[b])) % ctx.qm1])


def inv(ctx: FieldCtx, a: int) -> int:
    a = _check(ctx, a)
    if a == 0:
        raise DomainError("0 has no multiplicative inverse")
    return int(ctx.exp[(ctx.qm1 - int(ctx.log[a])) % ctx.qm1])


def div(ctx: FieldCtx, a: int, b: int) -> int:
    return mul(ctx, a, inv(ctx, b))


def power(ctx: FieldCtx, a: int, e: int) -> int:
    """``a**e`` for any integer ``e``; exponents act modulo ``q - 1``."""
    a = _check(ctx, a)
    e = int(e)
    if a == 0:
        if e == 0:
            return 1
        if e % ctx.qm1 == 0:
            raise DomainError(f"0^{e}: exponent is a nonzero multiple of q-1")
        return 0
    return int(ctx.exp[(int(ctx.log[a]) * (e % ctx.qm1)) % ctx.qm1])


def chi(ctx: FieldCtx, a: int) -> int:
    """Quadratic character: 0 at zero, +1 on squares, -1 on non-squares."""
    return int(ctx.chi_table[_check(ctx, a)])


# vectorised counterparts used outside the compiled kernels


def add_arr(ctx: FieldCtx, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    p = ctx.p
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    pw = 1
    for _ in range(ctx.n):
        out += ((a // pw + b // pw) % p) * pw
        pw *= p
    return out


def neg_arr(ctx: FieldCtx, a) -> np.ndarray:
    return ctx.neg_table[np.asarray(a, dtype=np.int64)].astype(np.int64)


def sub_arr(ctx: FieldCtx, a, b) -> np.ndarray:
    return add_arr(ctx, a, neg_arr(ctx, b))


def mul_arr(ctx: FieldCtx, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    la = ctx.log[a].astype(np.int64)
    lb = ctx.log[b].astype(np.int64)
    out = ctx.exp[(la + lb) % ctx.qm1].astype(np.int64)
    return np.where((a == 0) | (b == 0), 0, out)


def pow_arr(ctx: FieldCtx, a, e: int) -> np.ndarray:
    """Elementwise ``a**e`` with ``0**e = 0`` (``e`` must not reduce to 0 if zeros occur)."""
    a = np.asarray(a, dtype=np.int64)
    la = ctx.log[a].astype(np.int64)
    out = ctx.exp[(la * (e % ctx.qm1)) % ctx.qm1].astype(np.int64)
    return np.where(a == 0, 0 if e % ctx.qm1 or e else 1, out)


def chi_arr(ctx: FieldCtx, a) -> np.ndarray:
    return ctx.chi_table[np.asarray(a, dtype=np.int64)].astype(np.int64)
