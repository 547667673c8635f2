"""Boomerang counts beta_F(a, b), spectra and the B_ijkl decomposition.

``beta_F(a, b)`` counts ordered pairs ``(x, y)`` with ``F(x) - F(y) = b`` and
``F(x+a) - F(y+a) = b`` for nonzero ``a`` and ``b``.  Subtracting the two
equations shows a pair qualifies exactly when ``x`` and ``y`` share the same
derivative value ``F(x+a) - F(x)``, so the default row algorithm only visits
pairs inside each derivative class.  The direct all-pairs loop is kept as
``method="pairs"``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .difftools import BOUNDARY, SIJ_NAMES, derivative_values, max_delta_nonzero, sij_labels
from .errors import DomainError
from .field import FieldCtx, chi, div, power
from .funcs import BINOMIAL, POWER, FuncTable, gcd_class, tabulate


@dataclass(frozen=True, eq=False)
class BoomRow:
    """``counts[b] = beta_F(a, b)`` for ``b != 0``; ``counts[0]`` is unused (0)."""

    a: int
    counts: np.ndarray

    def __getitem__(self, b):
        return int(self.counts[b])


@dataclass(frozen=True)
class BoomSpectrum:
    nu: dict
    beta: int
    method: str = "bct"

    def total(self) -> int:
        return sum(self.nu.values())

    def to_dict(self, q=None, r=None, kind=None) -> dict:
        return {"q": q, "r": r, "kind": kind,
                "nu": {str(i): self.nu[i] for i in sorted(self.nu)},
                "beta": self.beta, "method": self.method}

    def to_json(self, **meta) -> str:
        return json.dumps(self.to_dict(**meta))


def _grouped_counts(ctx: FieldCtx, F: FuncTable, a: int, labels=None, nlabels=1) -> np.ndarray:
    d = derivative_values(ctx, F, a)
    order = np.argsort(d, kind="stable").astype(np.int64)
    if labels is None:
        labels = np.zeros(ctx.q, dtype=np.int64)
    log, exp, zech, neg, qm1 = ctx.tables()
    return _kernels.bct_row_grouped(F.values, d, order, labels, nlabels, log, exp, zech, neg, qm1)


def beta_row(ctx: FieldCtx, F: FuncTable, a: int, method: str = "grouped") -> BoomRow:
    a = int(a)
    if a == 0:
        raise DomainError("the input difference a must be nonzero")
    if method == "grouped":
        counts = _grouped_counts(ctx, F, a)[0, 0]
    elif method == "pairs":
        log, exp, zech, neg, qm1 = ctx.tables()
        counts = _kernels.bct_row_pairs(F.values, a, log, exp, zech, neg, qm1)
    else:
        raise DomainError(f"unknown BCT method {method!r}")
    counts.setflags(write=False)
    return BoomRow(a, counts)


def beta(ctx: FieldCtx, F: FuncTable, a: int, b: int, method: str = "grouped") -> int:
    if int(b) == 0:
        raise DomainError("beta(a, b) is defined for nonzero b only")
    return beta_row(ctx, F, a, method)[int(b)]


def reduce_boomerang(ctx: FieldCtx, r: int, u: int | None, a: int, b: int) -> int:
    """``b'`` with ``beta(a, b) = beta(1, b')``; the binomial sign is ``(-1)^r``."""
    if int(a) == 0:
        raise DomainError("the input difference a must be nonzero")
    ar = power(ctx, a, r)
    if u and chi(ctx, a) == -1 and r % 2:
        ar = int(ctx.neg_table[ar])
    return div(ctx, b, ar)


def _table(ctx, r, u):
    return tabulate(ctx, POWER, r) if not u else tabulate(ctx, BINOMIAL, r, u)


def beta_via_reduction(ctx: FieldCtx, r: int, u: int | None, a: int, b: int, row=None) -> int:
    if int(b) == 0:
        raise DomainError("beta(a, b) is defined for nonzero b only")
    if row is None:
        row = beta_row(ctx, _table(ctx, r, u), 1)
    return row[reduce_boomerang(ctx, r, u, a, b)]


def spectrum_from_row(counts, method="bct") -> BoomSpectrum:
    nu = Counter(int(c) for c in counts[1:])
    return BoomSpectrum(dict(sorted(nu.items())), max(nu), method)


def boom_spectrum(ctx: FieldCtx, r: int, u: int | None = 1, method: str = "grouped") -> BoomSpectrum:
    """Boomerang spectrum of ``F_{r,u}`` (or ``x^r`` when ``u`` is 0/None)."""
    return spectrum_from_row(beta_row(ctx, _table(ctx, r, u), 1, method).counts)


def boomerang_uniformity(ctx: FieldCtx, F: FuncTable) -> int:
    """``max_b beta(1, b)``; equals the uniformity for maps reducing to ``a = 1``."""
    return int(beta_row(ctx, F, 1).counts[1:].max())


CONFIRMED_ZERO = "confirmed-zero"
NONZERO = "nonzero-with-witness"
INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class ShortcutVerdict:
    status: str
    witness: int | None = None  # b != 0 with delta(1, b) >= 2


def beta_zero_shortcut(ctx: FieldCtx, r: int) -> ShortcutVerdict:
    """Decide ``beta(F_r) == 0`` from the differential row alone.

    Valid when ``q = 3 (mod 4)`` and ``gcd(r, q - 1)`` is 1 or 2: then the
    boomerang uniformity vanishes exactly when ``delta(1, b) <= 1`` for
    every nonzero ``b``.
    """
    if ctx.q % 4 != 3 or gcd_class(r, ctx.q) not in (1, 2):
        return ShortcutVerdict(INAPPLICABLE)
    counts = np.asarray(
        np.bincount(derivative_values(ctx, tabulate(ctx, BINOMIAL, r, 1), 1), minlength=ctx.q)
    )
    bad = np.nonzero(counts[1:] >= 2)[0]
    if len(bad) == 0:
        return ShortcutVerdict(CONFIRMED_ZERO)
    return ShortcutVerdict(NONZERO, int(bad[0]) + 1)


def bijkl_table(ctx: FieldCtx, r: int) -> np.ndarray:
    """Boomerang counts of ``F_r`` at ``a = 1`` split by the classes of ``x`` and ``y``.

    Shape ``(5, 5, q)``; index 4 collects ``x`` or ``y`` in ``{0, -1}``.
    """
    F = tabulate(ctx, BINOMIAL, r, 1)
    return _grouped_counts(ctx, F, 1, sij_labels(ctx), 5)


def bijkl_decompose(ctx: FieldCtx, r: int, b: int, table=None) -> dict:
    """``{(i, j, k, l): B_ijkl(b)}`` over the sixteen class pairs."""
    if int(b) == 0:
        raise DomainError("B_ijkl(b) is defined for nonzero b only")
    t = bijkl_table(ctx, r) if table is None else table
    out = {}
    for cx in range(4):
        for cy in range(4):
            key = (cx >> 1, cx & 1, cy >> 1, cy & 1)
            out[key] = int(t[cx, cy, b])
    return out


def boundary_pairs(table, b: int) -> int:
    """Pairs with ``x`` or ``y`` in ``{0, -1}`` at ``b``."""
    return int(table[BOUNDARY, :, b].sum() + table[:BOUNDARY, BOUNDARY, b].sum())


__all__ = [
    "BoomRow", "BoomSpectrum", "ShortcutVerdict", "beta_row", "beta", "beta_via_reduction",
    "reduce_boomerang", "boom_spectrum", "boomerang_uniformity", "beta_zero_shortcut",
    "bijkl_table", "bijkl_decompose", "boundary_pairs", "max_delta_nonzero", "SIJ_NAMES",
    "CONFIRMED_ZERO", "NONZERO", "INAPPLICABLE",
]
