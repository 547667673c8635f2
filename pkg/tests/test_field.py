import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from charbinom import _poly
from charbinom.errors import DomainError, ModulusError, ResourceCapError
from charbinom.field import (add, add_arr, build_field, chi, chi_arr, div, inv, mul, mul_arr, neg,
                             parse_modulus, pow_arr, power, smallest_irreducible, sub)

from conftest import second_modulus


def test_default_modulus_n3_is_x3_2x_1(f27):
    # x^3 + 2x + 1, constant term first
    assert f27.modulus == (1, 2, 0, 1)
    assert f27.modulus_str() == "1201"
    assert f27.exp[0] == 1 and f27.gen == f27.exp[1]


def test_prime_field():
    ctx = build_field(3, 1)
    assert ctx.q == 3
    assert mul(ctx, 2, 2) == 1
    assert add(ctx, 2, 2) == 1


def test_reducible_modulus_names_factor():
    # x^3 + 1 = (x + 1)(x^2 - x + 1)
    with pytest.raises(ModulusError, match="reducible"):
        build_field(3, 3, "1001")


def test_bad_moduli():
    with pytest.raises(ModulusError):
        build_field(3, 3, "1202")  # not monic
    with pytest.raises(ModulusError):
        build_field(3, 3, "120")  # wrong degree
    with pytest.raises(ModulusError):
        parse_modulus("12x1", 3)
    with pytest.raises(DomainError):
        build_field(4, 2)


def test_memory_cap(monkeypatch):
    with pytest.raises(ResourceCapError):
        build_field(3, 6, max_q=3**5)
    monkeypatch.setenv("CHARBINOM_MAX_Q", str(3**4))
    with pytest.raises(ResourceCapError):
        build_field(3, 5)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
def test_log_exp_inverse(n):
    ctx = build_field(3, n)
    ids = np.arange(1, ctx.q)
    assert (ctx.exp[ctx.log[ids]] == ids).all()
    assert (ctx.log[ctx.exp] == np.arange(ctx.q - 1)).all()
    assert ctx.log[0] == -1


def test_generator_is_smallest_primitive(f27):
    for cand in range(1, f27.gen):
        order = next(k for k in range(1, f27.q) if power(f27, cand, k) == 1)
        assert order < f27.q - 1


def test_smallest_irreducible_order():
    # ordering is by (c_{n-1}, ..., c_0): for n = 2 the first irreducible is x^2 + 1
    assert smallest_irreducible(3, 2) == (1, 0, 1)


def test_add_examples(f27):
    x = 3  # the element x
    assert add(f27, x, 2) == 5  # x + 2
    for a in range(f27.q):
        assert add(f27, a, 0) == a
        assert add(f27, a, neg(f27, a)) == 0


def test_mul_inv_examples(f27):
    g = f27.gen
    assert mul(f27, g, power(f27, g, 25)) == 1
    for a in range(1, f27.q):
        assert mul(f27, a, inv(f27, a)) == 1
        assert mul(f27, a, 1) == a and mul(f27, a, 0) == 0
    with pytest.raises(DomainError):
        inv(f27, 0)


def test_power_examples(f27):
    assert power(f27, f27.gen, 13) == 2  # gen^13 = -1
    for a in range(1, f27.q):
        assert power(f27, a, f27.q - 1) == 1
        assert power(f27, a, -1) == inv(f27, a)
        assert power(f27, a, 0) == 1
    assert power(f27, 0, 5) == 0
    assert power(f27, 0, 0) == 1
    with pytest.raises(DomainError):
        power(f27, 0, 26)


def test_chi_examples(f27):
    assert chi(f27, 0) == 0 and chi(f27, 1) == 1
    assert chi(f27, f27.gen) == -1
    assert chi(f27, 2) == -1  # -1 is a non-square when q = 3 mod 4


def _poly_products(ctx, a_ids, b_ids):
    """Products by schoolbook multiplication and reduction, independent of the log tables."""
    p, n = ctx.p, ctx.n
    pw = p ** np.arange(n)
    A = (a_ids[:, None] // pw) % p
    B = (b_ids[:, None] // pw) % p
    prod = np.zeros((len(a_ids), len(b_ids), 2 * n - 1), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            prod[:, :, i + j] += A[:, None, i] * B[None, :, j]
    mod = np.array(ctx.modulus, dtype=np.int64)
    for k in range(2 * n - 2, n - 1, -1):
        top = prod[:, :, k] % p
        prod[:, :, k - n:k + 1] -= top[:, :, None] * mod[None, None, :]
    return ((prod[:, :, :n] % p) * pw).sum(axis=2)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_mul_matches_polynomial_arithmetic_exhaustive(n):
    ctx = build_field(3, n)
    ids = np.arange(ctx.q, dtype=np.int64)
    for lo in range(0, ctx.q, 243):
        a = ids[lo:lo + 243]
        expected = _poly_products(ctx, a, ids)
        got = mul_arr(ctx, a[:, None], ids[None, :])
        assert (got == expected).all()


def test_mul_matches_polynomial_sampled_n9():
    ctx = build_field(3, 9)
    rng = np.random.default_rng(0)
    a = rng.integers(0, ctx.q, 300)
    b = rng.integers(0, ctx.q, 300)
    assert (mul_arr(ctx, a[:, None], b[None, :]) == _poly_products(ctx, a, b)).all()


def test_modulus_polynomial_roundtrip(f27):
    f = list(f27.modulus)
    assert _poly.irreducibility_witness(f, 3) is None
    assert _poly.to_str(f).startswith("x^3")


@pytest.mark.parametrize("n", [3, 5, 7])
def test_chi_multiplicative_exhaustive(n):
    ctx = build_field(3, n)
    ids = np.arange(1, ctx.q, dtype=np.int64)
    c = chi_arr(ctx, ids)
    assert (c == 1).sum() == (ctx.q - 1) // 2
    step = 97 if n == 7 else 1  # n = 7 spot rows; full table below in blocks
    for a in ids[::step]:
        prod = mul_arr(ctx, a, ids)
        assert (chi_arr(ctx, prod) == c[a - 1] * c).all()


def test_chi_multiplicative_exhaustive_n7_blocks(f2187):
    ctx = f2187
    ids = np.arange(1, ctx.q, dtype=np.int64)
    c = chi_arr(ctx, ids)
    for lo in range(0, len(ids), 256):
        a = ids[lo:lo + 256]
        prod = mul_arr(ctx, a[:, None], ids[None, :])
        assert (chi_arr(ctx, prod) == c[lo:lo + 256, None] * c[None, :]).all()


@pytest.mark.parametrize("n", [3, 5])
def test_euler_criterion(n):
    ctx = build_field(3, n)
    ids = np.arange(ctx.q)
    half_pow = pow_arr(ctx, ids, (ctx.q - 1) // 2)
    embedded = np.where(chi_arr(ctx, ids) == -1, ctx.neg_table[1], chi_arr(ctx, ids))
    assert (half_pow == embedded).all()


def test_element_parsing(f27):
    assert f27.element(5) == 5
    assert f27.element("d21") == 5  # 2 + 1*x
    assert f27.element("13") == 13
    with pytest.raises(DomainError):
        f27.element("d3")
    with pytest.raises(DomainError):
        f27.element(27)


def test_context_is_immutable(f27):
    with pytest.raises(ValueError):
        f27.log[1] = 0
    with pytest.raises(Exception):
        f27.p = 5


def test_build_is_cached():
    assert build_field(3, 4) is build_field(3, 4)


def test_other_prime():
    ctx = build_field(5, 3)
    assert ctx.q == 125
    for a in range(1, ctx.q):
        assert mul(ctx, a, inv(ctx, a)) == 1
    assert chi(ctx, ctx.neg_table[1]) == 1  # 125 = 1 mod 4


def test_two_moduli_same_size():
    alt = second_modulus(3, 5)
    ctx = build_field(3, 5, alt)
    assert ctx.modulus != build_field(3, 5).modulus
    assert (np.sort(ctx.exp) == np.arange(1, ctx.q)).all()


elements = st.integers(min_value=0, max_value=242)


@settings(max_examples=200, deadline=None)
@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    ctx = build_field(3, 5)
    assert add(ctx, a, b) == add(ctx, b, a)
    assert mul(ctx, a, b) == mul(ctx, b, a)
    assert mul(ctx, a, add(ctx, b, c)) == add(ctx, mul(ctx, a, b), mul(ctx, a, c))
    assert sub(ctx, add(ctx, a, b), b) == a
    if b:
        assert mul(ctx, div(ctx, a, b), b) == a


@settings(max_examples=100, deadline=None)
@given(st.lists(elements, min_size=1, max_size=20), st.lists(elements, min_size=1, max_size=20))
def test_vectorised_add_matches_scalar(xs, ys):
    ctx = build_field(3, 5)
    m = min(len(xs), len(ys))
    got = add_arr(ctx, np.array(xs[:m]), np.array(ys[:m]))
    assert got.tolist() == [add(ctx, x, y) for x, y in zip(xs[:m], ys[:m])]
