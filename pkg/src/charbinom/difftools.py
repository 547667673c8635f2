"""Differential counts, spectra and the S_ij / D_ij bookkeeping for binomials."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError
from .field import FieldCtx, chi, div, mul, power
from .funcs import BINOMIAL, POWER, FuncTable, tabulate

# labels used by the S_ij partition; x in {0, -1} gets BOUNDARY
S00, S01, S10, S11, BOUNDARY = 0, 1, 2, 3, 4
SIJ_NAMES = ("S00", "S01", "S10", "S11")


@dataclass(frozen=True, eq=False)
class DiffRow:
    a: int
    counts: np.ndarray

    def __getitem__(self, b):
        return int(self.counts[b])


@dataclass(frozen=True)
class DiffSpectrum:
    """Multiplicities ``omega[i] = #{b : delta(1, b) = i}``."""

    omega: dict
    delta: int

    def total(self) -> int:
        return sum(self.omega.values())

    def weighted_total(self) -> int:
        return sum(i * w for i, w in self.omega.items())

    def to_dict(self, q=None, r=None, kind=None) -> dict:
        return {"q": q, "r": r, "kind": kind,
                "omega": {str(i): self.omega[i] for i in sorted(self.omega)},
                "delta": self.delta}

    def to_json(self, **meta) -> str:
        return json.dumps(self.to_dict(**meta), sort_keys=False)


def spectrum_from_counts(counts) -> DiffSpectrum:
    omega = Counter(int(c) for c in counts)
    return DiffSpectrum(dict(sorted(omega.items())), max(omega))


def _check_a(ctx: FieldCtx, a: int) -> int:
    a = int(a)
    if a == 0:
        raise DomainError("the input difference a must be nonzero")
    if not 0 < a < ctx.q:
        raise DomainError(f"element id {a} outside [0, {ctx.q})")
    return a


def derivative_values(ctx: FieldCtx, F: FuncTable, a: int) -> np.ndarray:
    """``F(x + a) - F(x)`` for every ``x``."""
    a = _check_a(ctx, a)
    log, exp, zech, neg, qm1 = ctx.tables()
    return _kernels.derivative(F.values, a, log, exp, zech, neg, qm1)


def delta_row(ctx: FieldCtx, F: FuncTable, a: int) -> DiffRow:
    d = derivative_values(ctx, F, a)
    counts = np.bincount(d, minlength=ctx.q).astype(np.int64)
    counts.setflags(write=False)
    return DiffRow(int(a), counts)


def delta(ctx: FieldCtx, F: FuncTable, a: int, b: int) -> int:
    return int(np.count_nonzero(derivative_values(ctx, F, a) == int(b)))


def _table(ctx, r, u):
    return tabulate(ctx, POWER, r) if not u else tabulate(ctx, BINOMIAL, r, u)


def reduce_difference(ctx: FieldCtx, r: int, u: int | None, a: int, b: int) -> int:
    """Map ``(a, b)`` to ``b'`` with ``delta(a, b) = delta(1, b')``.

    ``u`` falsy means the power map ``x^r``, where ``b' = b / a^r``; for the
    binomial the sign flips with ``(-1)^(r+1)`` when ``a`` is a non-square.
    """
    a = _check_a(ctx, a)
    ar = power(ctx, a, r)
    if u and chi(ctx, a) == -1 and (r + 1) % 2:
        ar = int(ctx.neg_table[ar])
    return div(ctx, b, ar)


def delta_via_reduction(ctx: FieldCtx, r: int, u: int | None, a: int, b: int, row=None) -> int:
    """``delta(a, b)`` looked up in the ``a = 1`` row (pass ``row`` to reuse it)."""
    if row is None:
        row = delta_row(ctx, _table(ctx, r, u), 1)
    return row[reduce_difference(ctx, r, u, a, b)]


def diff_spectrum(ctx: FieldCtx, F: FuncTable) -> DiffSpectrum:
    """Differential spectrum from the ``a = 1`` row.

    Only meaningful for maps whose rows all reduce to ``a = 1`` (power maps
    and the binomials), which is the only way it is used here.
    """
    return spectrum_from_counts(delta_row(ctx, F, 1).counts)


@dataclass(frozen=True)
class Classification:
    label: str  # "PN", "APN", "locally-PN", "locally-APN" or "none"
    witness: int | None  # first b outside F_p that breaks the next-stronger class
    max_all: int
    max_outside_prime_field: int


def classify_locally(ctx: FieldCtx, F: FuncTable) -> Classification:
    """Classify from the ``a = 1`` row.

    PN / APN look at every ``b``; the local notions ignore ``b`` in the
    prime field.  The witness is the first ``b`` outside the prime field
    whose count exceeds 1 (or 2 when the map is not even locally-APN).
    """
    counts = delta_row(ctx, F, 1).counts
    outside = counts[ctx.p:]
    max_all = int(counts.max())
    max_out = int(outside.max()) if len(outside) else 0
    if max_all <= 1:
        label = "PN"
    elif max_all <= 2:
        label = "APN"
    elif max_out <= 1:
        label = "locally-PN"
    elif max_out <= 2:
        label = "locally-APN"
    else:
        label = "none"
    limit = 2 if label == "none" else 1
    bad = np.nonzero(outside > limit)[0]
    witness = int(bad[0]) + ctx.p if len(bad) else None
    return Classification(label, witness, max_all, max_out)


def max_delta_nonzero(ctx: FieldCtx, F: FuncTable) -> int:
    """``max_{b != 0} delta(1, b)``."""
    return int(delta_row(ctx, F, 1).counts[1:].max())


@dataclass(frozen=True, eq=False)
class SijPartition:
    labels: np.ndarray  # S00..S11 as 0..3, BOUNDARY for x in {0, -1}
    sizes: tuple

    def member(self, x: int) -> str | None:
        lab = int(self.labels[x])
        return None if lab == BOUNDARY else SIJ_NAMES[lab]


def sij_labels(ctx: FieldCtx) -> np.ndarray:
    c0 = ctx.chi_table.astype(np.int64)
    c1 = ctx.chi_table[ctx.plus_one].astype(np.int64)
    labels = np.where((c0 == 0) | (c1 == 0), BOUNDARY, 2 * (c0 == -1) + (c1 == -1))
    return labels.astype(np.int64)


def sij_partition(ctx: FieldCtx) -> SijPartition:
    labels = sij_labels(ctx)
    sizes = tuple(int(np.count_nonzero(labels == k)) for k in range(4))
    labels.setflags(write=False)
    return SijPartition(labels, sizes)


def dij_table(ctx: FieldCtx, r: int) -> np.ndarray:
    """Counts of solutions of ``F_r(x+1) - F_r(x) = b`` split by ``x``'s class.

    Row ``k`` of the result (shape ``(5, q)``) holds the counts over ``S_k``
    for ``k`` in S00..S11 and, in the last row, over ``x in {0, -1}``.
    """
    F = tabulate(ctx, BINOMIAL, r, 1)
    d = derivative_values(ctx, F, 1).astype(np.int64)
    labels = sij_labels(ctx)
    flat = np.bincount(labels * ctx.q + d, minlength=5 * ctx.q)
    return flat.reshape(5, ctx.q)


def dij_decompose(ctx: FieldCtx, r: int, b: int, table=None) -> tuple[int, int, int, int]:
    """``(D00, D01, D10, D11)`` at ``b``; boundary solutions are in ``dij_table``."""
    t = dij_table(ctx, r) if table is None else table
    return tuple(int(t[k, b]) for k in range(4))
