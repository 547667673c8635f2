"""Power maps, quadratic-character binomials and exponent bookkeeping.

The binomial family is ``F_{r,u}(x) = x^r (1 + u*chi(x))``; with ``u = 1`` it
vanishes on non-squares and doubles the power map on squares.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .field import FieldCtx, chi, mul, power

POWER = "power"
BINOMIAL = "binomial"


def reduce_exponent(r: int, q: int) -> int:
    """Representative of ``r`` modulo ``q - 1`` in ``[1, q - 1]``."""
    e = int(r) % (q - 1)
    return e if e else q - 1


@dataclass(frozen=True, eq=False)
class FuncTable:
    """Evaluation table of a map GF(q) -> GF(q), indexed by element id."""

    ctx: FieldCtx = field(repr=False)
    values: np.ndarray = field(repr=False)
    kind: str = "custom"
    r: int | None = None
    u: int | None = None

    @property
    def label(self) -> dict:
        return {"kind": self.kind, "r": self.r, "u": self.u, "p": self.ctx.p, "n": self.ctx.n,
                "modulus": self.ctx.modulus_str()}

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def __len__(self) -> int:
        return len(self.values)

    def is_permutation(self) -> bool:
        return len(np.unique(self.values)) == len(self.values)

    def to_csv(self, fh=None) -> str | None:
        """Write a JSON label line, then ``input_id,output_id`` rows."""
        out = io.StringIO() if fh is None else fh
        out.write(json.dumps(self.label, sort_keys=True) + "\n")
        out.write("input_id,output_id\n")
        for x, y in enumerate(self.values.tolist()):
            out.write(f"{x},{y}\n")
        return out.getvalue() if fh is None else None

    @classmethod
    def from_csv(cls, ctx: FieldCtx, text: str) -> "FuncTable":
        lines = text.strip().splitlines()
        label = json.loads(lines[0])
        if lines[1].strip() != "input_id,output_id":
            raise DomainError("missing input_id,output_id header")
        values = np.zeros(ctx.q, dtype=np.int32)
        seen = 0
        for line in lines[2:]:
            x, y = (int(t) for t in line.split(","))
            values[x] = y
            seen += 1
        if seen != ctx.q:
            raise DomainError(f"expected {ctx.q} rows, got {seen}")
        return from_values(ctx, values, kind=label.get("kind", "custom"), r=label.get("r"),
                           u=label.get("u"))


def from_values(ctx: FieldCtx, values, kind="custom", r=None, u=None) -> FuncTable:
    values = np.asarray(values, dtype=np.int32).copy()
    if values.shape != (ctx.q,):
        raise DomainError(f"table must have length {ctx.q}")
    if values.min() < 0 or values.max() >= ctx.q:
        raise DomainError("table values must be element ids")
    values.setflags(write=False)
    return FuncTable(ctx, values, kind, r, u)


def eval_power(ctx: FieldCtx, r: int, x: int) -> int:
    if x == 0:
        return 0
    return power(ctx, x, reduce_exponent(r, ctx.q))


def eval_binomial(ctx: FieldCtx, r: int, u: int, x: int) -> int:
    if u == 0:
        raise DomainError("u = 0 degenerates to the power map; use eval_power")
    c = chi(ctx, x)
    if c == 0:
        return 0
    factor = _one_plus(ctx, u if c == 1 else _neg(ctx, u))
    return mul(ctx, eval_power(ctx, r, x), factor)


def _neg(ctx, a):
    return int(ctx.neg_table[a])


def _one_plus(ctx, a):
    return int(ctx.plus_one[a])


def binomial_logs(ctx: FieldCtx, u: int) -> tuple[int, int]:
    """Logs of ``1 + u`` and ``1 - u`` (``-1`` where the factor is zero)."""
    if u == 0:
        raise DomainError("u must be nonzero")
    cp = _one_plus(ctx, u)
    cm = _one_plus(ctx, _neg(ctx, u))
    return int(ctx.log[cp]), int(ctx.log[cm])


def tabulate(ctx: FieldCtx, kind: str, r: int, u: int | None = None) -> FuncTable:
    """Table of ``x^r`` (``kind="power"``) or ``x^r (1 + u chi(x))``.

    One vectorised pass over the discrete logs; ``u`` defaults to 1.
    """
    if kind == POWER:
        lcp = lcm = 0
        u = None
    elif kind == BINOMIAL:
        u = 1 if u is None else int(u)
        lcp, lcm = binomial_logs(ctx, u)
    else:
        raise DomainError(f"unknown function kind {kind!r}")
    e = reduce_exponent(r, ctx.q)
    lx = ctx.log[1:].astype(np.int64)
    lc = np.where(lx % 2 == 0, lcp, lcm)
    vals = np.zeros(ctx.q, dtype=np.int32)
    vals[1:] = np.where(lc < 0, 0, ctx.exp[(e * lx + lc) % ctx.qm1])
    vals.setflags(write=False)
    return FuncTable(ctx, vals, kind, int(r), u)


def coset_orbit(r: int, modulus_m: int, multiplier: int = 3) -> list[int]:
    """Orbit of ``r`` under multiplication, in generation order."""
    if modulus_m < 2:
        raise DomainError("modulus must be at least 2")
    start = r % modulus_m
    out = [start]
    cur = start * multiplier % modulus_m
    while cur != start:
        out.append(cur)
        cur = cur * multiplier % modulus_m
    return out


def coset(r: int, modulus_m: int, multiplier: int = 3) -> list[int]:
    """Sorted cyclotomic coset of ``r`` modulo ``modulus_m``."""
    return sorted(coset_orbit(r, modulus_m, multiplier))


@dataclass(frozen=True)
class ExponentClass:
    r: int
    q: int
    p: int
    coset_full: tuple
    coset_half: tuple

    @property
    def canon(self) -> int:
        return self.coset_half[0]

    @property
    def canon_full(self) -> int:
        return self.coset_full[0]

    def orbit_half(self) -> list[int]:
        """Half-modulus coset listed from its minimum, as the tables print it."""
        return coset_orbit(self.canon, (self.q - 1) // 2, self.p)


def exponent_class(r: int, q: int, p: int = 3) -> ExponentClass:
    return ExponentClass(
        r=int(r), q=q, p=p,
        coset_full=tuple(coset(r, q - 1, p)),
        coset_half=tuple(coset(r, (q - 1) // 2, p)),
    )


def digit_sum(e: int, p: int) -> int:
    s = 0
    while e:
        e, d = divmod(e, p)
        s += d
    return s


def algebraic_degree_binomial(ctx, r: int) -> int:
    """Algebraic degree of ``x^r (1 + chi(x)) = x^e1 + x^e2``.

    ``e1 = r`` and ``e2 = r + (q-1)/2`` modulo ``q - 1``, both taken in
    ``[1, q - 1]``; the degree is the larger base-p digit sum.
    """
    q, p = ctx.q, ctx.p
    half = (q - 1) // 2
    if r % half == 0:
        raise DomainError(f"r = {r} is a multiple of (q-1)/2; the binomial degenerates")
    e1 = reduce_exponent(r, q)
    e2 = reduce_exponent(r + half, q)
    return max(digit_sum(e1, p), digit_sum(e2, p))


def gcd_class(r: int, q: int) -> int:
    return math.gcd(int(r), q - 1)
