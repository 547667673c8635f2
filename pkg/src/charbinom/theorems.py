"""Closed-form predictions for spectra, solution counts and character sums.

Every function here returns a *prediction*; the brute-force counts from
:mod:`charbinom.difftools` and :mod:`charbinom.boomtools` are the oracles
they are tested against.  Predicates accept a single element id or an array
of ids and answer in kind.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .difftools import DiffSpectrum
from .errors import DomainError, InvariantViolation
from .field import FieldCtx, add_arr, chi_arr, mul_arr, neg_arr, pow_arr, sub_arr

_CHUNK = 1 << 20


def _require_p3_odd(ctx_or_n, p=3):
    n = ctx_or_n.n if isinstance(ctx_or_n, FieldCtx) else ctx_or_n
    if isinstance(ctx_or_n, FieldCtx):
        p = ctx_or_n.p
    if p != 3:
        raise DomainError("only characteristic 3 is supported here")
    if n % 2 == 0:
        raise DomainError(f"n = {n} must be odd")


def _as_ids(b):
    arr = np.asarray(b, dtype=np.int64)
    return arr, arr.ndim == 0


def _out(values, scalar):
    if scalar:
        return tuple(int(v) for v in values)
    return tuple(np.asarray(v, dtype=np.int64) for v in values)


def _c(ctx, k):
    return ctx.embed(k)


def poly_eval_arr(ctx: FieldCtx, coeffs, x) -> np.ndarray:
    """Evaluate ``sum coeffs[i] x^i`` (coefficients are element ids) at every ``x``."""
    x = np.asarray(x, dtype=np.int64)
    acc = np.zeros_like(x)
    for c in reversed(list(coeffs)):
        acc = add_arr(ctx, mul_arr(ctx, acc, x), c)
    return acc


# ---------------------------------------------------------------- char sums


@dataclass(frozen=True)
class CharSumReport:
    n: int
    gamma1: int
    gamma2: int
    quartic_sum: int  # sum of chi(x^4 + x^3 - 1)
    mixed_sum: int  # gamma1 + sum of chi(x^4 - 1) chi(x^4 + x^3 - 1)
    weil_bound: int  # 6 * isqrt(q), for display

    def within_weil(self, q: int) -> bool:
        """``|gamma_i| <= 6 sqrt(q)``, checked exactly as ``gamma^2 <= 36 q``."""
        return self.gamma1**2 <= 36 * q and self.gamma2**2 <= 36 * q

    def to_dict(self) -> dict:
        nu0, nu1 = boom_spectrum_closed_3n_minus_3(self.n, self.gamma1, self.gamma2)
        return {"n": self.n, "gamma1": self.gamma1, "gamma2": self.gamma2,
                "quartic_sum": self.quartic_sum, "mixed_sum": self.mixed_sum,
                "weil_bound": self.weil_bound, "nu0": nu0, "nu1": nu1}


def gamma_sums(ctx: FieldCtx) -> CharSumReport:
    """The two quartic character sums behind the spectrum of ``F_{3^n-3}``.

    ``gamma1 = sum chi(u(u^2+1)) chi(u^4+u^3-1)`` and
    ``gamma2 = sum chi(u(1-u^2)) chi(u^4+u^3-1)`` over all ``u``, evaluated
    directly in chunks, together with two auxiliary sums that both equal -1.
    """
    _require_p3_odd(ctx)
    one, m1 = _c(ctx, 1), _c(ctx, -1)
    g1 = g2 = s53 = s54 = 0
    for lo in range(0, ctx.q, _CHUNK):
        u = np.arange(lo, min(lo + _CHUNK, ctx.q), dtype=np.int64)
        u2 = pow_arr(ctx, u, 2)
        u3 = mul_arr(ctx, u2, u)
        u4 = mul_arr(ctx, u2, u2)
        cq = chi_arr(ctx, add_arr(ctx, add_arr(ctx, u4, u3), m1))
        cu = chi_arr(ctx, u)
        c_u2p1 = chi_arr(ctx, add_arr(ctx, u2, one))
        c_1mu2 = chi_arr(ctx, sub_arr(ctx, one, u2))
        c_u4m1 = chi_arr(ctx, add_arr(ctx, u4, m1))
        g1 += int(np.sum(cu * c_u2p1 * cq))
        g2 += int(np.sum(cu * c_1mu2 * cq))
        s53 += int(np.sum(cq))
        s54 += int(np.sum(c_u4m1 * cq))
    return CharSumReport(ctx.n, g1, g2, s53, g1 + s54, 6 * math.isqrt(ctx.q))


def boom_spectrum_closed_3n_minus_3(n: int, gamma1: int, gamma2: int) -> tuple[int, int]:
    """``(nu0, nu1)`` for ``F_{3^n-3}`` from the two character sums."""
    if n < 3 or n % 2 == 0:
        raise DomainError("n must be odd and at least 3")
    q = 3**n
    a = q + 1 + 2 * gamma1 + gamma2
    b = 3 * q - 5 - 2 * gamma1 - gamma2
    if a % 4 or b % 4 or a < 0 or b < 0:
        raise InvariantViolation(
            f"non-integral boomerang spectrum for n={n}, gamma1={gamma1}, gamma2={gamma2}")
    nu1, nu0 = a // 4, b // 4
    if nu0 + nu1 != q - 1:
        raise InvariantViolation("closed-form spectrum does not sum to q - 1")
    return nu0, nu1


def quad_charsum_check(ctx: FieldCtx, a2: int, a1: int, a0: int) -> int:
    """Direct ``sum chi(a2 x^2 + a1 x + a0)``, checked against the closed form.

    The closed form is ``-chi(a2)`` when ``a1^2 - 4 a0 a2 != 0`` and
    ``(q - 1) chi(a2)`` otherwise.
    """
    if a2 == 0:
        raise DomainError("a2 must be nonzero")
    x = np.arange(ctx.q, dtype=np.int64)
    direct = int(np.sum(chi_arr(ctx, poly_eval_arr(ctx, (a0, a1, a2), x))))
    disc = sub_arr(ctx, mul_arr(ctx, a1, a1), mul_arr(ctx, _c(ctx, 4), mul_arr(ctx, a0, a2)))
    c2 = int(ctx.chi_table[a2])
    closed = -c2 if int(disc) != 0 else (ctx.q - 1) * c2
    if direct != closed:
        raise InvariantViolation(f"quadratic sum {direct} != closed form {closed} for {(a2, a1, a0)}")
    return direct


def odd_poly_charsum(ctx: FieldCtx, coeffs) -> int:
    """``sum chi(f(x))`` for an odd polynomial ``f``; zero whenever ``q = 3 (mod 4)``."""
    if any(c for i, c in enumerate(coeffs) if i % 2 == 0):
        raise DomainError("only odd-degree coefficients may be nonzero")
    x = np.arange(ctx.q, dtype=np.int64)
    return int(np.sum(chi_arr(ctx, poly_eval_arr(ctx, coeffs, x))))


# ---------------------------------------------------------------- spectra


def _spectrum(omega: dict) -> DiffSpectrum:
    omega = {k: v for k, v in sorted(omega.items()) if v}
    return DiffSpectrum(omega, max(omega))


def locally_pn_spectrum_closed(q: int) -> DiffSpectrum:
    """Spectrum of a locally-PN binomial when ``q = 3 (mod 4)``."""
    if q % 4 != 3:
        raise DomainError("requires q = 3 (mod 4)")
    return _spectrum({0: (q - 3) // 4, 1: (3 * q - 1) // 4, (q + 1) // 4: 1})


def apn_spectrum_closed(n: int) -> DiffSpectrum:
    """Spectrum of ``x^r`` for an exponent meeting the Zha-Wang condition."""
    if n % 2 == 0:
        raise DomainError("n must be odd")
    q = 3**n
    return _spectrum({0: (q - 3) // 2, 1: 3, 2: (q - 3) // 2})


def sij_closed(q: int) -> tuple[int, int, int, int]:
    """Sizes of ``S00, S01, S10, S11`` (sign classes of ``chi(x), chi(x+1)``)."""
    if q % 2 == 0:
        raise DomainError("q must be odd")
    if q % 4 == 3:
        k = (q - 3) // 4
        return (k, (q + 1) // 4, k, k)
    k = (q - 1) // 4
    return ((q - 5) // 4, k, k, k)


# ---------------------------------------------------------------- predicates


def zw_ddt_predicate(ctx: FieldCtx, m: int, b):
    """Predicted ``delta_{x^r}(1, b)`` for the Zha-Wang exponent with parameter ``m``.

    1 on the prime field; otherwise 2 when ``chi(b^{3^m+1} - 1) = -1`` and
    0 when it is +1.
    """
    b, scalar = _as_ids(b)
    c = chi_arr(ctx, sub_arr(ctx, pow_arr(ctx, b, 3**m + 1), _c(ctx, 1)))
    pred = np.where(b < ctx.p, 1, np.where(c == -1, 2, 0))
    return int(pred) if scalar else pred


def dij_predicates_zw_even(ctx: FieldCtx, m: int, b):
    """Predicted ``(D01(b), D10(b))`` for ``F_r`` with ``r`` the even Zha-Wang exponent."""
    b, scalar = _as_ids(b)
    cb = chi_arr(ctx, b)
    h = pow_arr(ctx, b, (3**m + 1) // 2)
    sign = -1 if m % 2 else 1
    d01 = (cb == 1) & (chi_arr(ctx, add_arr(ctx, h, _c(ctx, 1))) == -1)
    d10 = (cb == -1) & (chi_arr(ctx, add_arr(ctx, h, _c(ctx, sign))) == sign)
    return _out((d01, d10), scalar)


def dij_predicates_2x3l_plus_1(ctx: FieldCtx, b):
    """Predicted ``(D00, D01, D10)`` for ``F_r`` with ``r = 2*3^l + 1``, ``l = (n-1)/2``."""
    _require_p3_odd(ctx)
    b, scalar = _as_ids(b)
    ell = (ctx.n - 1) // 2
    t = add_arr(ctx, pow_arr(ctx, b, 2 * 3 ** (ell + 1) - 3), _c(ctx, 1))
    cb, ct = chi_arr(ctx, b), chi_arr(ctx, t)
    d00 = cb * ct == 1
    d01 = (cb == 1) & (ct == -1)
    d10 = (cb == -1) & (ct == 1)
    return _out((d00, d01, d10), scalar)


def bijkl_predicates_3n_minus_3(ctx: FieldCtx, b):
    """Predicted ``(B0001, B0010, B0100, B1000)`` at ``b`` for ``F_{3^n-3}``.

    With ``e = (3^n + 1)/4`` and ``c = b^e``, each indicator is a conjunction
    of four quadratic-character conditions on ``b``, ``c +- 1``, ``c +- b``
    and ``c (c +- b)^e -+ (c +- 1)``.
    """
    _require_p3_odd(ctx)
    b, scalar = _as_ids(b)
    e = (ctx.q + 1) // 4
    one = _c(ctx, 1)
    c = pow_arr(ctx, b, e)
    cb = chi_arr(ctx, b)
    cp1, cm1 = add_arr(ctx, c, one), sub_arr(ctx, c, one)
    cpb, cmb = add_arr(ctx, c, b), sub_arr(ctx, c, b)
    kp = mul_arr(ctx, c, pow_arr(ctx, cpb, e))  # c (c + b)^e
    km = mul_arr(ctx, c, pow_arr(ctx, cmb, e))  # c (c - b)^e
    x = lambda a: chi_arr(ctx, a)  # noqa: E731
    b0001 = (cb == -1) & (x(cp1) == 1) & (x(cpb) == 1) & (x(sub_arr(ctx, kp, cp1)) == 1)
    b0010 = (cb == -1) & (x(cm1) == -1) & (x(cmb) == -1) & (x(add_arr(ctx, km, cm1)) == 1)
    b0100 = (cb == 1) & (x(cpb) == -1) & (x(cm1) == -1) & (x(add_arr(ctx, kp, cm1)) == 1)
    b1000 = (cb == 1) & (x(cp1) == 1) & (x(cmb) == 1) & (x(sub_arr(ctx, km, cp1)) == 1)
    return _out((b0001, b0010, b0100, b1000), scalar)


def bijkl_predicate_indices():
    """Class pairs ``(i, j, k, l)`` matching the order of :func:`bijkl_predicates_3n_minus_3`."""
    return [(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]


def neg_ids(ctx: FieldCtx, b):
    return neg_arr(ctx, b)
