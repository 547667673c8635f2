"""``charbinom`` command line.

Exit codes: 0 success, 1 domain error (bad input), 2 a checked claim failed
(invariant violation or a FAIL row in ``verify-tables``), 3 refused for
resource reasons (memory cap, or a long run without ``--long``).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import apngen, boomtools, difftools, scan, theorems
from .errors import DomainError, InvariantViolation, ResourceCapError
from .field import build_field, parse_modulus
from .funcs import BINOMIAL, POWER, coset_orbit, exponent_class, tabulate
from .verify import table_ns, verify_table

EXIT_OK, EXIT_DOMAIN, EXIT_INVARIANT, EXIT_RESOURCE = 0, 1, 2, 3


# ------------------------------------------------------------ helpers


class _Out:
    def __init__(self, path):
        self.fh = open(path, "w", encoding="utf-8") if path else sys.stdout

    def write(self, text: str) -> None:
        self.fh.write(text if text.endswith("\n") else text + "\n")

    def close(self) -> None:
        if self.fh is not sys.stdout:
            self.fh.close()


def _load_config(args) -> None:
    """Fill unset options from a JSON config file (command line wins)."""
    if not args.config:
        return
    with open(args.config, encoding="utf-8") as fh:
        cfg = json.load(fh)
    unknown = set(cfg) - {"p", "n", "modulus", "threads", "format"}
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    for key, value in cfg.items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _ctx(args):
    if args.n is None:
        raise DomainError("--n is required")
    p = args.p or 3
    modulus = parse_modulus(args.modulus, p) if args.modulus else None
    return build_field(p, args.n, modulus)


def _kind(args) -> str:
    if getattr(args, "binomial", False):
        return BINOMIAL
    return args.kind or BINOMIAL


def _u(ctx, args, kind):
    if kind == POWER:
        return None
    return ctx.element(args.u) if args.u is not None else 1


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise DomainError(f"--{name} is required for {args.command}")


def _json(obj) -> str:
    return json.dumps(obj)


# ------------------------------------------------------------ commands


def cmd_field_info(args, out):
    ctx = _ctx(args)
    out.write(_json({"p": ctx.p, "n": ctx.n, "q": ctx.q, "modulus": ctx.modulus_str(), "gen": ctx.gen}))


def cmd_eval(args, out):
    _need(args, "r")
    ctx = _ctx(args)
    kind = _kind(args)
    F = tabulate(ctx, kind, args.r, _u(ctx, args, kind))
    if args.x is not None:
        x = ctx.element(args.x)
        out.write(_json({"x": x, "value": F(x), **F.label}))
    else:
        out.write(F.to_csv())


def _row_output(args, out, ctx, counts, key, b_start):
    if args.b is not None:
        b = ctx.element(args.b)
        out.write(_json({"a": args.a_id, "b": b, key: int(counts[b])}))
        return
    if args.format == "csv":
        out.write("b," + key)
        for b in range(b_start, ctx.q):
            out.write(f"{b},{int(counts[b])}")
    else:
        out.write(_json({"a": args.a_id, "counts": {str(b): int(counts[b]) for b in range(b_start, ctx.q)
                                                    if counts[b]}}))


def cmd_ddt(args, out):
    _need(args, "r")
    ctx = _ctx(args)
    kind = _kind(args)
    F = tabulate(ctx, kind, args.r, _u(ctx, args, kind))
    args.a_id = ctx.element(args.a) if args.a is not None else 1
    row = difftools.delta_row(ctx, F, args.a_id)
    _row_output(args, out, ctx, row.counts, "delta", 0)


def cmd_bct(args, out):
    _need(args, "r")
    ctx = _ctx(args)
    kind = _kind(args)
    F = tabulate(ctx, kind, args.r, _u(ctx, args, kind))
    args.a_id = ctx.element(args.a) if args.a is not None else 1
    if args.b is not None and ctx.element(args.b) == 0:
        raise DomainError("beta(a, b) is defined for nonzero b only")
    row = boomtools.beta_row(ctx, F, args.a_id, method=args.method)
    _row_output(args, out, ctx, row.counts, "beta", 1)


def cmd_diff_spectrum(args, out):
    _need(args, "r")
    ctx = _ctx(args)
    kind = _kind(args)
    F = tabulate(ctx, kind, args.r, _u(ctx, args, kind))
    spec = difftools.diff_spectrum(ctx, F)
    if spec.total() != ctx.q or spec.weighted_total() != ctx.q:
        raise InvariantViolation(f"spectrum identities fail for q={ctx.q} r={args.r}")
    out.write(spec.to_json(q=ctx.q, r=args.r, kind=kind))


def cmd_boom_spectrum(args, out):
    _need(args, "r")
    ctx = _ctx(args)
    kind = _kind(args)
    spec = boomtools.boom_spectrum(ctx, args.r, _u(ctx, args, kind), method=args.method)
    if spec.total() != ctx.q - 1:
        raise InvariantViolation(f"boomerang spectrum does not sum to q-1 for q={ctx.q} r={args.r}")
    out.write(spec.to_json(q=ctx.q, r=args.r, kind=kind))


def cmd_apn_gen(args, out):
    _need(args, "n")
    n = args.n
    if args.m is not None:
        pairs = [apngen.zw_exponent(n, args.m)]
    else:
        pairs = apngen.zw_all(n, dedup=not args.all)
    for cls, w in pairs:
        out.write(_json({"n": n, "m": w.m, "u": w.u, "branch": w.parity_branch, "r": w.r,
                         "coset_full_min": cls.canon_full, "coset_half_min": cls.canon, "k": w.k}))


def cmd_coset(args, out):
    _need(args, "n", "r")
    p = args.p or 3
    q = p**args.n
    cls = exponent_class(args.r, q, p)
    out.write(_json({"r": args.r, "q": q, "canon": cls.canon, "coset_half": coset_orbit(cls.canon, (q - 1) // 2, p),
                     "coset_full": list(cls.coset_full), "gcd": math.gcd(args.r, q - 1)}))


def cmd_charsum(args, out):
    _need(args, "n")
    if args.n >= 11 and not args.long:
        raise ResourceCapError(f"character sums at n = {args.n} are a long run; pass --long")
    ctx = _ctx(args)
    rep = theorems.gamma_sums(ctx)
    if not rep.within_weil(ctx.q):
        raise InvariantViolation(f"Weil bound fails at n={args.n}: {rep}")
    if rep.quartic_sum != -1 or rep.mixed_sum != -1:
        raise InvariantViolation(f"auxiliary sums differ from -1 at n={args.n}: {rep}")
    out.write(_json(rep.to_dict()))


def cmd_scan(args, out):
    _need(args, "n")
    n = args.n
    if args.which == "locally-pn" and n >= 13 and not args.long:
        raise ResourceCapError(f"the n = {n} screen is a long run; pass --long")
    ctx = _ctx(args)
    if args.which == "beta0":
        records = scan.scan_beta_zero(n, bct_confirm=args.bct_confirm, ctx=ctx)
    elif args.which == "beta1":
        records = scan.scan_beta_one(n, ctx=ctx)
    else:
        records = scan.scan_locally_pn(n, ctx=ctx, checkpoint=args.checkpoint)
    out.write(scan.to_markdown(records) if args.format == "md" else scan.to_jsonl(records))


def cmd_verify_tables(args, out):
    _need(args, "table")
    ok = True
    if args.n is not None:
        ns = [args.n]
    else:
        ns = table_ns(args.table)
    for n in ns:
        try:
            report = verify_table(args.table, n, long=args.long, bct_confirm=args.bct_confirm)
        except ResourceCapError as exc:
            if args.n is not None:
                raise
            out.write(f"SKIP n={n} ({exc})")
            continue
        for line in report.lines():
            out.write(line)
        ok &= report.ok
    return EXIT_OK if ok else EXIT_INVARIANT


COMMANDS = {
    "field-info": cmd_field_info, "eval": cmd_eval, "ddt": cmd_ddt, "bct": cmd_bct,
    "diff-spectrum": cmd_diff_spectrum, "boom-spectrum": cmd_boom_spectrum, "apn-gen": cmd_apn_gen,
    "coset": cmd_coset, "charsum": cmd_charsum, "scan": cmd_scan, "verify-tables": cmd_verify_tables,
}


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=None, help="characteristic (default 3)")
    common.add_argument("--n", type=int, default=None, help="extension degree")
    common.add_argument("--modulus", default=None, help="base-p digits, constant term first")
    common.add_argument("--threads", type=int, default=None, help="worker threads for compiled loops")
    common.add_argument("--format", choices=["json", "csv", "md"], default=None)
    common.add_argument("--out", default=None, help="write output to PATH instead of stdout")
    common.add_argument("--config", default=None, help="JSON file with p, n, modulus, threads, format")
    common.add_argument("--long", action="store_true", help="allow long runs")
    common.add_argument("-v", "--verbose", action="store_true")

    func = argparse.ArgumentParser(add_help=False)
    func.add_argument("--r", type=int, default=None, help="exponent")
    func.add_argument("--u", default=None, help="binomial coefficient u (element; default 1)")
    func.add_argument("--kind", choices=[POWER, BINOMIAL], default=None)
    func.add_argument("--binomial", action="store_true", help="shorthand for --kind binomial")

    parser = argparse.ArgumentParser(prog="charbinom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("field-info", parents=[common], help="show modulus and generator")
    p = sub.add_parser("eval", parents=[common, func], help="tabulate or evaluate a function")
    p.add_argument("--x", default=None, help="single input element")
    for name, helptext in (("ddt", "differential row"), ("bct", "boomerang row")):
        p = sub.add_parser(name, parents=[common, func], help=helptext)
        p.add_argument("--a", default=None, help="input difference (default 1)")
        p.add_argument("--b", default=None, help="single output difference")
        if name == "bct":
            p.add_argument("--method", choices=["grouped", "pairs"], default="grouped")
    sub.add_parser("diff-spectrum", parents=[common, func], help="differential spectrum")
    p = sub.add_parser("boom-spectrum", parents=[common, func], help="boomerang spectrum")
    p.add_argument("--method", choices=["grouped", "pairs"], default="grouped")
    p = sub.add_parser("apn-gen", parents=[common], help="Zha-Wang APN exponents")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--all", action="store_true", help="every m, not only m <= (n-1)/2")
    p = sub.add_parser("coset", parents=[common], help="cyclotomic cosets of r")
    p.add_argument("--r", type=int, default=None)
    sub.add_parser("charsum", parents=[common], help="character sums for F_(3^n-3)")
    p = sub.add_parser("scan", parents=[common], help="exhaustive class scans")
    p.add_argument("--which", choices=["beta0", "beta1", "locally-pn"], default="beta0")
    p.add_argument("--bct-confirm", action="store_true", help="confirm beta = 0 with full rows")
    p.add_argument("--checkpoint", default=None, help="checkpoint file for locally-pn scans")
    p = sub.add_parser("verify-tables", parents=[common], help="recompute bundled table rows")
    p.add_argument("--table", default=None, help="beta0 (3), beta1 (4 or 5), locally_pn (6), attribution (7) or charsum (8)")
    p.add_argument("--bct-confirm", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = None
    try:
        _load_config(args)
        args.format = args.format or "json"
        scan.set_threads(args.threads)
        out = _Out(args.out)
        code = COMMANDS[args.command](args, out)
        return code or EXIT_OK
    except ResourceCapError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantViolation as exc:
        print(f"INVARIANT VIOLATION ({' '.join(sys.argv[1:] if argv is None else argv)}): {exc}",
              file=sys.stderr)
        return EXIT_INVARIANT
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    finally:
        if out is not None:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
