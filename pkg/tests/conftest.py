import os

import pytest

from charbinom import _poly
from charbinom.field import build_field

LONG = os.environ.get("CHARBINOM_LONG", "") not in ("", "0")


def pytest_collection_modifyitems(config, items):
    if LONG:
        return
    skip = pytest.mark.skip(reason="long run; set CHARBINOM_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


def second_modulus(p, n):
    """Largest-lex monic irreducible: a valid modulus different from the default."""
    import itertools

    best = None
    for digs in itertools.product(range(p), repeat=n):
        cand = list(digs) + [1]
        if cand[0] and _poly.irreducibility_witness(cand, p) is None:
            best = tuple(cand)
    return best


@pytest.fixture(scope="session")
def f27():
    return build_field(3, 3)


@pytest.fixture(scope="session")
def f243():
    return build_field(3, 5)


@pytest.fixture(scope="session")
def f2187():
    return build_field(3, 7)
