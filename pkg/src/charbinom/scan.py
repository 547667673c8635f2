"""Exhaustive searches over exponent classes of the binomials ``F_r``.

Two exponents give the same binomial up to linear equivalence when they lie
in the same cyclotomic coset modulo ``(q - 1)/2`` (multiplication by 3), so
every search walks the coset minima ``r`` in ``[2, (q - 1)/2)``.

The differential screen (``delta(1, b) <= 1`` for all ``b != 0``) runs in a
compiled, early-aborting kernel.  When ``q = 3 (mod 4)`` and
``gcd(r, q - 1)`` is 1 or 2, passing the screen is equivalent to boomerang
uniformity 0; otherwise the full boomerang row decides.
"""

from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import asdict, dataclass, field

import numba
import numpy as np

from . import _kernels
from .apngen import pow2_plus_exponent, pow2_minus_exponent, pow2_ells, divisor_family, zw_all
from .boomtools import beta_row
from .difftools import delta_row
from .errors import DomainError
from .field import FieldCtx, build_field
from .funcs import BINOMIAL, algebraic_degree_binomial, binomial_logs, coset_orbit, gcd_class, tabulate

log = logging.getLogger(__name__)

NOT_COMPUTED = "not-computed"
FULL_BCT_MAX_N = 9


@dataclass(frozen=True)
class ScanRecord:
    n: int
    canon_r: int
    coset_half: tuple  # orbit under x3 mod (q-1)/2, starting at canon_r
    delta_at_zero: int
    max_delta_nonzero: int
    beta: object  # int, or NOT_COMPUTED
    alg_degree: int
    gcd: int
    tags: tuple = field(default=())
    beta_method: str | None = None  # "bct", "shortcut" or None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["coset_half"] = list(self.coset_half)
        d["tags"] = list(self.tags)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# ------------------------------------------------------------ enumeration


def _require_odd(n: int) -> None:
    if n % 2 == 0:
        raise DomainError(
            f"n = {n} is even; the binomial tables are only defined for odd n "
            "(the constructions need q = 3 mod 4)")


def canonical_reps(n: int, p: int = 3) -> np.ndarray:
    """Coset minima modulo ``(q - 1)/2`` in ``[2, (q - 1)/2)``, ascending."""
    half = (p**n - 1) // 2
    r = np.arange(2, half, dtype=np.int64)
    keep = np.ones(len(r), dtype=bool)
    cur = r.copy()
    for _ in range(n - 1):
        cur = cur * p % half
        keep &= r <= cur
    return r[keep]


def naive_reps(n: int, p: int = 3) -> list[int]:
    """Same set as :func:`canonical_reps`, by walking every ``r`` and deduplicating orbits."""
    half = (p**n - 1) // 2
    seen = set()
    out = []
    for r in range(2, half):
        if r in seen:
            continue
        orb = coset_orbit(r, half, p)
        seen.update(orb)
        out.append(min(orb))
    return sorted(set(out) - {0, 1})


# ------------------------------------------------------------ screening


def set_threads(threads: int | None) -> None:
    if threads:
        numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))


def screen(ctx: FieldCtx, rs, limit: int = 1) -> np.ndarray:
    """Witness ``b`` (first count above ``limit``) per exponent, or -1 if none."""
    rs = np.ascontiguousarray(rs, dtype=np.int64)
    if len(rs) == 0:
        return np.zeros(0, dtype=np.int64)
    lcp, lcm = binomial_logs(ctx, 1)
    log_, exp, zech, neg, qm1 = ctx.tables()
    nchunks = max(1, min(len(rs), 4 * numba.get_num_threads()))
    return _kernels.screen_many(rs, lcp, lcm, limit, log_, exp, zech, neg, ctx.plus_one, qm1, nchunks)


def _record(ctx: FieldCtx, r: int, beta, method, with_tags=True) -> ScanRecord:
    F = tabulate(ctx, BINOMIAL, r, 1)
    counts = delta_row(ctx, F, 1).counts
    rec = ScanRecord(
        n=ctx.n, canon_r=int(r), coset_half=tuple(coset_orbit(r, ctx.half, ctx.p)),
        delta_at_zero=int(counts[0]), max_delta_nonzero=int(counts[1:].max()),
        beta=beta, alg_degree=algebraic_degree_binomial(ctx, r), gcd=gcd_class(r, ctx.q),
        beta_method=method,
    )
    if with_tags:
        rec = ScanRecord(**{**rec.__dict__, "tags": tuple(attribute(rec))})
    return rec


def full_beta(ctx: FieldCtx, r: int) -> int:
    """Boomerang uniformity of ``F_r`` from the complete ``a = 1`` row."""
    return int(beta_row(ctx, tabulate(ctx, BINOMIAL, r, 1), 1).counts[1:].max())


def _shortcut_ok(ctx: FieldCtx, r: int) -> bool:
    return ctx.q % 4 == 3 and gcd_class(r, ctx.q) in (1, 2)


# ------------------------------------------------------------ scans


def scan_beta_zero(n: int, bct_confirm: bool = False, ctx: FieldCtx | None = None,
                   reps=None) -> list[ScanRecord]:
    """Classes whose binomial has boomerang uniformity 0, sorted by ``canon_r``.

    Screen survivors are confirmed by the gcd shortcut when it applies and by
    the full boomerang row otherwise (always, with ``bct_confirm``).  Beyond
    ``n = 9`` survivors the shortcut cannot decide are reported with
    ``beta = "not-computed"``.
    """
    _require_odd(n)
    ctx = ctx or build_field(3, n)
    reps = canonical_reps(n) if reps is None else np.asarray(reps, dtype=np.int64)
    wit = screen(ctx, reps, 1)
    out = []
    for r in reps[wit < 0].tolist():
        if not bct_confirm and _shortcut_ok(ctx, r):
            out.append(_record(ctx, r, 0, "shortcut"))
        elif n <= FULL_BCT_MAX_N:
            b = full_beta(ctx, r)
            if b == 0:
                out.append(_record(ctx, r, 0, "bct"))
            else:
                log.warning("COUNTEREXAMPLE n=%d r=%d passes the delta screen but beta=%d", n, r, b)
        else:
            out.append(_record(ctx, r, NOT_COMPUTED, None))
    return out


def scan_beta_one(n: int, ctx: FieldCtx | None = None, reps=None) -> list[ScanRecord]:
    """Classes whose binomial has boomerang uniformity exactly 1 (full rows)."""
    _require_odd(n)
    if n > FULL_BCT_MAX_N:
        raise DomainError(f"full boomerang rows are limited to n <= {FULL_BCT_MAX_N}")
    ctx = ctx or build_field(3, n)
    reps = canonical_reps(n) if reps is None else np.asarray(reps, dtype=np.int64)
    wit = screen(ctx, reps, 1)
    out = []
    for r, w in zip(reps.tolist(), wit.tolist()):
        if w < 0 and _shortcut_ok(ctx, r):
            continue  # beta = 0 by the shortcut
        if full_beta(ctx, r) == 1:
            out.append(_record(ctx, r, 1, "bct"))
    return out


def conjecture_check(n: int, ctx: FieldCtx | None = None) -> list[dict]:
    """Classes where ``beta == 0`` and the delta screen disagree.

    Only classes outside the gcd shortcut's hypothesis can disagree, so
    only those get a full boomerang row.  An empty list means the
    equivalence holds for every class at this ``n``.
    """
    _require_odd(n)
    if n > FULL_BCT_MAX_N:
        raise DomainError(f"full boomerang rows are limited to n <= {FULL_BCT_MAX_N}")
    ctx = ctx or build_field(3, n)
    reps = canonical_reps(n)
    wit = screen(ctx, reps, 1)
    bad = []
    for r, w in zip(reps.tolist(), wit.tolist()):
        if _shortcut_ok(ctx, r):
            continue
        b = full_beta(ctx, r)
        if (b == 0) != (w < 0):
            bad.append({"n": n, "r": r, "beta": b, "screen_witness": w})
            log.warning("COUNTEREXAMPLE n=%d r=%d beta=%d screen witness=%d", n, r, b, w)
    return bad


def scan_locally_pn(n: int, ctx: FieldCtx | None = None, reps=None, checkpoint: str | None = None,
                    batch: int = 4096) -> list[ScanRecord]:
    """Classes with ``delta(1, b) <= 1`` for every ``b != 0``; beta is not computed.

    With ``checkpoint``, progress is appended to that file (one completed
    ``canon_r`` per line) and hits to ``<checkpoint>.hits.jsonl``, both
    fsync'd per batch; a rerun resumes after the last completed value.
    """
    _require_odd(n)
    ctx = ctx or build_field(3, n)
    reps = canonical_reps(n) if reps is None else np.asarray(reps, dtype=np.int64)
    hits: list[ScanRecord] = []
    start = 0
    if checkpoint:
        done = _read_checkpoint(checkpoint)
        if done is not None:
            start = int(np.searchsorted(reps, done, side="right"))
            hits = _read_hits(checkpoint + ".hits.jsonl")
    for lo in range(start, len(reps), batch):
        chunk = reps[lo:lo + batch]
        wit = screen(ctx, chunk, 1)
        new = [_record(ctx, r, NOT_COMPUTED, None) for r in chunk[wit < 0].tolist()]
        hits.extend(new)
        if checkpoint:
            _append(checkpoint + ".hits.jsonl", "".join(h.to_json() + "\n" for h in new))
            _append(checkpoint, f"{int(chunk[-1])}\n")
        log.info("n=%d screened %d/%d classes, %d hits", n, lo + len(chunk), len(reps), len(hits))
    return sorted(hits, key=lambda h: h.canon_r)


def _append(path: str, text: str) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(text)
        fh.flush()
        os.fsync(fh.fileno())


def _read_checkpoint(path: str) -> int | None:
    if not os.path.exists(path):
        return None
    lines = [ln.strip() for ln in open(path, encoding="utf-8") if ln.strip()]
    return int(lines[-1]) if lines else None


def _read_hits(path: str) -> list[ScanRecord]:
    if not os.path.exists(path):
        return []
    out = []
    for ln in open(path, encoding="utf-8"):
        if ln.strip():
            d = json.loads(ln)
            d["coset_half"] = tuple(d["coset_half"])
            d["tags"] = tuple(d["tags"])
            out.append(ScanRecord(**d))
    return out


# ------------------------------------------------------------ attribution


def _in_class(r: int, members: set, half: int) -> bool:
    return r % half in members


def attribute(record=None, *, n: int | None = None, r: int | None = None) -> list[str]:
    """Construction tags for a class, given a :class:`ScanRecord` or ``n`` and ``r``.

    Tags: ``ZW(m=..,u=..)`` (Zha-Wang exponent, ``m <= (n-1)/2``),
    ``ZW-div(n+1,m=..)`` / ``ZW-div(n-1,m=..)`` (divisor families),
    ``ZW-pow2(n+1,l=..)`` / ``ZW-pow2(n-1,l=..)`` (their power-of-two
    specialisations), ``3^((n+1)/2)-1``, ``2*3^l+1``, ``3^n-3``, ``q-2``,
    ``(q+1)/4``, or ``untagged``.
    """
    if record is not None:
        n, r = record.n, record.canon_r
    if n is None or r is None:
        raise DomainError("attribute needs a record or both n and r")
    q = 3**n
    half = (q - 1) // 2
    members = set(coset_orbit(r, half, 3))
    tags = []
    if n % 2 == 1 and n >= 3:
        for cls, w in zw_all(n):
            if _in_class(w.r, members, half):
                tags.append(f"ZW(m={w.m},u={w.u})")
        for fm in divisor_family(n):
            if _in_class(fm.r, members, half):
                side = "n+1" if fm.branch == "i" else "n-1"
                tags.append(f"ZW-div({side},m={fm.m})")
        for ell in pow2_ells(n, plus=True):
            if _in_class(pow2_plus_exponent(n, ell), members, half):
                tags.append(f"ZW-pow2(n+1,l={ell})")
        for ell in pow2_ells(n, plus=False):
            if _in_class(pow2_minus_exponent(n, ell), members, half):
                tags.append(f"ZW-pow2(n-1,l={ell})")
        if _in_class(3 ** ((n + 1) // 2) - 1, members, half):
            tags.append("3^((n+1)/2)-1")
        if _in_class(2 * 3 ** ((n - 1) // 2) + 1, members, half):
            tags.append("2*3^l+1")
    if _in_class(q - 3, members, half):
        tags.append("3^n-3")
    if _in_class(q - 2, members, half):
        tags.append("q-2")
    if (q + 1) % 4 == 0 and _in_class((q + 1) // 4, members, half):
        tags.append("(q+1)/4")
    return tags or ["untagged"]


def primary_source(tags) -> str | None:
    """Most specific Zha-Wang construction among ``tags``.

    Order: the ``3^((n+1)/2) - 1`` class, then the power-of-two
    specialisations (``n+1`` before ``n-1``, smallest ``l`` >= 2), then the
    general ``ZW(m, u)`` parametrisation.
    """
    tags = list(tags)
    if "3^((n+1)/2)-1" in tags:
        return "3^((n+1)/2)-1"
    for side in ("n+1", "n-1"):
        pw = [t for t in tags if t.startswith(f"ZW-pow2({side},") and not t.endswith("l=1)")]
        if pw:
            return pw[0]
    zw = [t for t in tags if t.startswith("ZW(")]
    return zw[0] if zw else None


# ------------------------------------------------------------ output


def to_jsonl(records) -> str:
    return "".join(r.to_json() + "\n" for r in records)


def to_markdown(records) -> str:
    lines = ["| n | r | cyclotomic coset | max delta(1,b), b != 0 | beta | algebraic degree | tags |",
             "|---|---|---|---|---|---|---|"]
    for rec in records:
        coset = "(" + ", ".join(str(c) for c in rec.coset_half) + ")"
        lines.append(f"| {rec.n} | {rec.canon_r} | {coset} | {rec.max_delta_nonzero} | {rec.beta} "
                     f"| {rec.alg_degree} | {', '.join(rec.tags)} |")
    return "\n".join(lines) + "\n"


def coset_key(n: int, r: int) -> frozenset:
    return frozenset(coset_orbit(r, (3**n - 1) // 2, 3))


def gcd_ok(r: int, q: int) -> bool:
    return math.gcd(r, q - 1) in (1, 2)
