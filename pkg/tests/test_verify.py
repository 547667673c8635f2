import pytest

from charbinom.errors import DomainError, ResourceCapError
from charbinom.funcs import coset_orbit
from charbinom.verify import load_expected, table_name, table_ns, verify_table


def test_dataset_shape():
    data = load_expected()
    assert data["format_version"] >= 1
    for name in ("beta0", "beta1", "locally_pn", "attribution", "charsum"):
        assert data[name], name
        for row in data[name]:
            assert row["provenance"], row


def test_printed_cosets_are_orbits():
    data = load_expected()
    for name in ("beta0", "beta1", "locally_pn"):
        for row in data[name]:
            half = (3 ** row["n"] - 1) // 2
            assert coset_orbit(row["printed_r"], half) == row["printed_coset"], row


def test_table_aliases():
    assert table_name(3) == "beta0"
    assert table_name("4") == table_name(5) == "beta1"
    assert table_name("charsum") == "charsum"
    assert table_ns(3) == [3, 5, 7, 9]
    with pytest.raises(DomainError):
        table_name(9)
    with pytest.raises(DomainError):
        verify_table(3, 11)


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_beta_zero_table_passes(n):
    report = verify_table(3, n)
    assert report.ok, report.lines()


@pytest.mark.parametrize("n", [3, 5])
def test_beta_one_table_passes(n):
    assert verify_table(4, n).ok


def test_beta_one_n7_reports_the_known_differences():
    report = verify_table(4, 7)
    assert not report.ok
    fails = [r.message for r in report.rows if r.status == "FAIL"]
    extras = [r.message for r in report.rows if r.status == "EXTRA"]
    assert fails == ["n=7 r=107 (degree 8 != 7)"]
    assert [m.split()[1] for m in extras] == ["r=235", "r=242", "r=337"]
    assert report.lines()[-1] == "FAIL table=beta1 n=7"


def test_locally_pn_n11_passes():
    assert verify_table(6, 11).ok


def test_locally_pn_n13_needs_long():
    with pytest.raises(ResourceCapError):
        verify_table(6, 13)


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13])
def test_attribution_passes(n):
    assert verify_table(7, n).ok


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_charsum_passes(n):
    report = verify_table(8, n)
    assert report.ok
    assert len(report.rows) == 4


def test_charsum_n11_needs_long():
    with pytest.raises(ResourceCapError):
        verify_table(8, 11)
    assert verify_table(8, 11, long=True).ok
