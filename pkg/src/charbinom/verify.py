"""Recompute published table rows and diff them against the bundled dataset."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import DomainError, ResourceCapError
from .field import build_field
from .funcs import coset_orbit
from .scan import attribute, coset_key, primary_source, scan_beta_one, scan_beta_zero, scan_locally_pn
from .theorems import gamma_sums

LONG_CHARSUM_N = 11
LONG_LOCALLY_PN_N = 13


@lru_cache(maxsize=1)
def load_expected() -> dict:
    text = resources.files("charbinom.data").joinpath("expected_tables.json").read_text("utf-8")
    return json.loads(text)


def table_name(table) -> str:
    data = load_expected()
    key = str(table)
    if key in data["aliases"]:
        return data["aliases"][key]
    if key in data["aliases"].values():
        return key
    raise DomainError(f"unknown table {table!r}; choose from {sorted(data['aliases'])}")


def table_ns(table) -> list[int]:
    rows = load_expected()[table_name(table)]
    return sorted({row["n"] for row in rows})


@dataclass
class RowResult:
    status: str  # PASS, FAIL or EXTRA
    message: str


@dataclass
class VerifyReport:
    table: str
    n: int
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status == "PASS" for r in self.rows)

    def add(self, ok: bool, msg: str) -> None:
        self.rows.append(RowResult("PASS" if ok else "FAIL", msg))

    def lines(self) -> list[str]:
        out = [f"{r.status} {r.message}" for r in self.rows]
        out.append(f"{'PASS' if self.ok else 'FAIL'} table={self.table} n={self.n}")
        return out


def _tags_cover(expected: list, tags) -> bool:
    tags = list(tags)
    for want in expected:
        if want == "ZW":
            if not any(t.startswith("ZW(") for t in tags):
                return False
        elif want not in tags:
            return False
    return True


def _class_rows(report: VerifyReport, expected: list, records, check_delta=True) -> None:
    n = report.n
    half = (3**n - 1) // 2
    found = {frozenset(rec.coset_half): rec for rec in records}
    matched = set()
    for row in expected:
        r = row["printed_r"]
        key = coset_key(n, r)
        rec = found.get(key)
        problems = []
        if coset_orbit(r, half) != row["printed_coset"]:
            problems.append("printed coset is not the orbit of r")
        if rec is None:
            problems.append("class not found by the scan")
        else:
            matched.add(key)
            if rec.alg_degree != row["alg_degree"]:
                problems.append(f"degree {rec.alg_degree} != {row['alg_degree']}")
            if check_delta and rec.max_delta_nonzero != row["max_delta"]:
                problems.append(f"max delta {rec.max_delta_nonzero} != {row['max_delta']}")
            if not _tags_cover(row.get("expected_tags", []), rec.tags):
                problems.append(f"tags {list(rec.tags)} miss {row['expected_tags']}")
        canon = rec.canon_r if rec else min(key)
        detail = "; ".join(problems) if problems else (
            f"canon={canon} degree={row['alg_degree']} max_delta={row['max_delta']}")
        report.add(not problems, f"n={n} r={r} ({detail})")
    for key, rec in sorted(found.items(), key=lambda kv: kv[1].canon_r):
        if key not in matched:
            report.rows.append(RowResult(
                "EXTRA", f"n={n} r={rec.canon_r} found by the scan but not listed "
                         f"(max_delta={rec.max_delta_nonzero}, beta={rec.beta}, degree={rec.alg_degree})"))


def verify_table(table, n: int, long: bool = False, bct_confirm: bool = False) -> VerifyReport:
    name = table_name(table)
    rows = [row for row in load_expected()[name] if row["n"] == n]
    if not rows:
        raise DomainError(f"table {table} has no rows for n = {n}; available: {table_ns(table)}")
    report = VerifyReport(name, n)
    if name == "beta0":
        _class_rows(report, rows, scan_beta_zero(n, bct_confirm=bct_confirm))
    elif name == "beta1":
        _class_rows(report, rows, scan_beta_one(n))
    elif name == "locally_pn":
        if n >= LONG_LOCALLY_PN_N and not long:
            raise ResourceCapError(f"the n = {n} screen is a long run; pass --long")
        _class_rows(report, rows, scan_locally_pn(n), check_delta=True)
    elif name == "attribution":
        for row in rows:
            tags = attribute(n=n, r=row["printed_r"])
            got = primary_source(tags)
            report.add(got == row["source"], f"n={n} r={row['printed_r']} source={got} "
                                             f"(expected {row['source']})")
    elif name == "charsum":
        if n >= LONG_CHARSUM_N and not long:
            raise ResourceCapError(f"character sums at n = {n} are a long run; pass --long")
        rep = gamma_sums(build_field(3, n)).to_dict()
        row = rows[0]
        for k in ("gamma1", "gamma2", "nu0", "nu1"):
            report.add(rep[k] == row[k], f"n={n} {k}={rep[k]} (expected {row[k]})")
    return report
