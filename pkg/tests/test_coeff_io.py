from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from borcherds_lab.coeff_io import CoeffFileError, dumps, load_path, loads

tables = st.dictionaries(st.integers(-50, 500), st.fractions(max_denominator=10**6), max_size=40)


@given(tables)
def test_round_trip_exact(coeffs):
    text = dumps(coeffs)
    back = loads(text)
    assert back.coeffs == {n: c for n, c in coeffs.items() if c}
    assert dumps(back.coeffs) == text


@given(tables, st.integers(-5, 0), st.integers(500, 600))
def test_round_trip_with_header(coeffs, lo, hi):
    coeffs = {n: c for n, c in coeffs.items() if lo <= n <= hi}
    meta = {"D": 5, "weight": Fraction(1, 2), "n_min": lo, "n_max": hi}
    back = loads(dumps(coeffs, meta))
    assert back.meta == meta
    assert back.index_range() == (lo, hi)


def test_comments_and_blank_lines():
    t = loads("# a comment\n\n-1 1   # trailing\n0 5\n4 -54/7\n")
    assert t.coeffs == {-1: 1, 0: 5, 4: Fraction(-54, 7)}


@pytest.mark.parametrize(
    "text, line",
    [
        ("0 1\n1 x\n", 2),
        ("0 1\n\n1 1/0\n", 3),
        ("0 1 2\n", 1),
        ("a 1\n", 1),
        ("0 1\n0 2\n", 2),
        ("# n_min: zero\n", 1),
        ("0 1.5\n", 1),
    ],
)
def test_malformed_lines_report_line_number(text, line):
    with pytest.raises(CoeffFileError) as exc:
        loads(text, source="f.txt")
    assert exc.value.line == line
    assert f"f.txt:{line}:" in str(exc.value)


def test_index_outside_declared_range():
    with pytest.raises(CoeffFileError):
        loads("# n_max: 3\n5 1\n")


def test_missing_file(tmp_path):
    with pytest.raises(CoeffFileError):
        load_path(tmp_path / "nope.txt")


def test_load_path(tmp_path):
    p = tmp_path / "f.txt"
    p.write_text("# D: 13\n1 2\n")
    t = load_path(p)
    assert t.meta == {"D": 13} and t.coeffs == {1: 2}
