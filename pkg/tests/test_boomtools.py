from collections import Counter

import numpy as np
import pytest

from charbinom.boomtools import (CONFIRMED_ZERO, INAPPLICABLE, NONZERO, beta, beta_row, beta_via_reduction,
                                 beta_zero_shortcut, bijkl_decompose, bijkl_table, boom_spectrum,
                                 boomerang_uniformity, boundary_pairs)
from charbinom.difftools import max_delta_nonzero
from charbinom.errors import DomainError
from charbinom.field import add, build_field, sub
from charbinom.funcs import BINOMIAL, POWER, tabulate

from conftest import second_modulus


def brute_beta_row(ctx, F, a):
    """Pair-by-pair count straight from the definition, in pure Python."""
    counts = [0] * ctx.q
    vals = [F(x) for x in range(ctx.q)]
    shifted = [F(add(ctx, x, a)) for x in range(ctx.q)]
    for x in range(ctx.q):
        for y in range(ctx.q):
            d1 = sub(ctx, vals[x], vals[y])
            if d1 and d1 == sub(ctx, shifted[x], shifted[y]):
                counts[d1] += 1
    return counts


def test_identity_row(f27):
    row = beta_row(f27, tabulate(f27, POWER, 1), 4)
    assert row[0] == 0
    assert all(row[b] == 27 for b in range(1, 27))


def test_errors(f27):
    F = tabulate(f27, BINOMIAL, 7, 1)
    with pytest.raises(DomainError):
        beta_row(f27, F, 0)
    with pytest.raises(DomainError):
        beta(f27, F, 1, 0)
    with pytest.raises(DomainError):
        beta_row(f27, F, 1, method="magic")


@pytest.mark.parametrize("r", [7, 12])
def test_beta_zero_examples_n3(f27, r):
    row = beta_row(f27, tabulate(f27, BINOMIAL, r, 1), 1)
    assert int(row.counts[1:].max()) == 0


@pytest.mark.parametrize("n, nu", [
    (3, {0: 26}),
    (5, {0: 182, 1: 60}),
    (7, {0: 1486, 1: 700}),
])
def test_spectrum_of_3n_minus_3(n, nu):
    ctx = build_field(3, n)
    spec = boom_spectrum(ctx, ctx.q - 3, 1)
    assert spec.nu == nu
    assert spec.total() == ctx.q - 1
    assert spec.beta == max(nu)


def test_spectrum_json(f243):
    spec = boom_spectrum(f243, 240, 1)
    assert spec.to_dict(q=243, r=240, kind="binomial") == {
        "q": 243, "r": 240, "kind": "binomial", "nu": {"0": 182, "1": 60}, "beta": 1, "method": "bct"}


@pytest.mark.parametrize("r, u", [(2, 1), (5, 1), (7, 1), (8, 2), (3, None), (20, None), (24, 1)])
def test_kernels_match_definition_n3(f27, r, u):
    F = tabulate(f27, BINOMIAL, r, u) if u else tabulate(f27, POWER, r)
    for a in (1, 2, 5, 17):
        expected = brute_beta_row(f27, F, a)
        expected[0] = 0
        assert beta_row(f27, F, a, "grouped").counts.tolist() == expected
        assert beta_row(f27, F, a, "pairs").counts.tolist() == expected


@pytest.mark.parametrize("n", [3, 5])
def test_grouped_matches_pairs_all_exponents(n):
    ctx = build_field(3, n)
    for r in range(2, (ctx.q - 1) // 2):
        F = tabulate(ctx, BINOMIAL, r, 1)
        assert (beta_row(ctx, F, 1, "grouped").counts == beta_row(ctx, F, 1, "pairs").counts).all()


def test_grouped_matches_pairs_n7(f2187):
    for r in (2, 55, 235, 2184):
        F = tabulate(f2187, BINOMIAL, r, 1)
        assert (beta_row(f2187, F, 1, "grouped").counts == beta_row(f2187, F, 1, "pairs").counts).all()


@pytest.mark.parametrize("r, u", [(7, 1), (2, 1), (24, 1), (5, 2), (8, None), (20, None)])
def test_reduction_exhaustive_n3(f27, r, u):
    F = tabulate(f27, BINOMIAL, r, u) if u else tabulate(f27, POWER, r)
    row1 = beta_row(f27, F, 1)
    for a in range(1, f27.q):
        row = beta_row(f27, F, a)
        for b in range(1, f27.q):
            assert row[b] == beta_via_reduction(f27, r, u, a, b, row=row1)


@pytest.mark.parametrize("n", [5, 7])
def test_reduction_sampled(n):
    ctx = build_field(3, n)
    rng = np.random.default_rng(10 + n)
    for r in (2, ctx.q - 3, 16 if n == 5 else 235):
        F = tabulate(ctx, BINOMIAL, r, 1)
        row1 = beta_row(ctx, F, 1)
        for a in rng.integers(1, ctx.q, 25):
            row = beta_row(ctx, F, int(a))
            for b in rng.integers(1, ctx.q, 40):
                assert row[int(b)] == beta_via_reduction(ctx, r, 1, int(a), int(b), row=row1)


def test_shortcut_examples(f243):
    assert beta_zero_shortcut(f243, 26).status == CONFIRMED_ZERO
    v = beta_zero_shortcut(f243, 2)
    assert v.status == NONZERO
    assert max_delta_nonzero(f243, tabulate(f243, BINOMIAL, 2, 1)) == 2
    assert v.witness is not None
    assert beta_zero_shortcut(f243, 11).status == INAPPLICABLE  # gcd(11, 242) = 11
    assert beta_zero_shortcut(build_field(3, 4), 3).status == INAPPLICABLE  # q = 1 mod 4


@pytest.mark.parametrize("n", [3, 5])
def test_shortcut_agrees_with_full_rows(n):
    ctx = build_field(3, n)
    applicable = 0
    for r in range(2, (ctx.q - 1) // 2):
        verdict = beta_zero_shortcut(ctx, r)
        if verdict.status == INAPPLICABLE:
            continue
        applicable += 1
        full = boomerang_uniformity(ctx, tabulate(ctx, BINOMIAL, r, 1))
        assert (verdict.status == CONFIRMED_ZERO) == (full == 0)
    assert applicable > 0


@pytest.mark.parametrize("n, r", [(3, 24), (3, 2), (5, 240), (5, 16)])
def test_bijkl_sum_check(n, r):
    ctx = build_field(3, n)
    table = bijkl_table(ctx, r)
    row = beta_row(ctx, tabulate(ctx, BINOMIAL, r, 1), 1).counts
    for b in range(1, ctx.q):
        parts = bijkl_decompose(ctx, r, b, table)
        assert len(parts) == 16
        assert sum(parts.values()) + boundary_pairs(table, b) == row[b]


def test_bijkl_structure_3n_minus_3(f243):
    r = f243.q - 3
    table = bijkl_table(f243, r)
    for b in range(1, f243.q):
        parts = bijkl_decompose(f243, r, b, table)
        four = [parts[k] for k in [(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]]
        assert max(four) <= 1
        assert (four[0] == four[1] == 0) or (four[2] == four[3] == 0)
    with pytest.raises(DomainError):
        bijkl_decompose(f243, r, 0, table)


@pytest.mark.parametrize("n", [3, 5])
def test_rows_symmetric_under_negation(n):
    ctx = build_field(3, n)
    neg = ctx.neg_table
    for r in range(2, (ctx.q - 1) // 2, 1 if n == 3 else 5):
        counts = beta_row(ctx, tabulate(ctx, BINOMIAL, r, 1), 1).counts
        assert Counter(counts[1:].tolist()) == Counter(counts[neg[1:]].tolist())
        # swapping x and y maps each solution at b to one at -b
        assert (counts[neg] == counts).all()


@pytest.mark.parametrize("n", [3, 5])
def test_boomerang_spectra_modulus_invariant(n):
    a = build_field(3, n)
    b = build_field(3, n, second_modulus(3, n))
    for r in range(2, (a.q - 1) // 2):
        assert boom_spectrum(a, r, 1) == boom_spectrum(b, r, 1)
