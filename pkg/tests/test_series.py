from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from borcherds_lab.series import (
    BiSeries,
    QSeries,
    SeriesError,
    WindowError,
    graded_product,
    product_with_exponents,
)

from oracles import coefficient_convolution

small = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def qseries(draw, min_len=0):
    v = draw(st.integers(min_value=-3, max_value=3))
    c = draw(st.lists(small, min_size=min_len, max_size=12))
    return QSeries(c, v, v + len(c))


@st.composite
def unit_series(draw):
    f = draw(qseries(min_len=1))
    assume(f.coeffs[0] != 0)
    return f


@given(qseries(), qseries())
def test_multiplication_commutes(a, b):
    assert a * b == b * a


@given(qseries(), qseries(), qseries())
def test_multiplication_associates(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(qseries(), qseries(), qseries())
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(qseries(), qseries())
def test_addition_commutes(a, b):
    assert a + b == b + a


@given(qseries(), qseries())
def test_product_matches_convolution(a, b):
    prod = a * b
    da = dict(a.items())
    db = dict(b.items())
    ref = coefficient_convolution(da, db, prod.valuation, prod.precision)
    assert prod.to_dict() == ref


@given(qseries(), qseries())
def test_product_precision_rule(a, b):
    assert (a * b).precision == min(a.precision + b.valuation, b.precision + a.valuation)


@given(unit_series())
def test_inverse(f):
    g = f.invert()
    one = f * g
    assert one.precision == f.precision - f.valuation
    assert one.agrees_with(QSeries.one(one.precision))


@given(unit_series(), st.integers(min_value=0, max_value=4))
def test_integer_power(f, e):
    ref = QSeries.one(f.precision - f.valuation)
    for _ in range(e):
        ref = ref * f
    got = f ** e
    assert got.agrees_with(ref)


def test_large_integer_inverse_uses_newton():
    # prod (1 - q^n)^24 has many terms; its inverse times itself must be 1
    d = product_with_exponents([(n, 24) for n in range(1, 300)], 300)
    assert (d * d.invert()).agrees_with(QSeries.one(300))


def test_precision_example():
    a = QSeries.from_dict({-1: 1, 2: 3}, precision=3)
    b = QSeries([1, 1, 1, 1, 1], 0, 5)
    c = a * b
    assert c.valuation == -1 and c.precision == 3


def test_coefficient_beyond_precision_raises():
    f = QSeries([1, 2, 3], 0, 3)
    assert f[-5] == 0
    with pytest.raises(WindowError):
        f[3]
    with pytest.raises(WindowError):
        f.truncate(4)


def test_invert_zero_series():
    with pytest.raises(SeriesError):
        QSeries([0, 0], 0, 2).invert()


def test_invert_unnormalized_requires_normalization():
    f = QSeries([0, 1, 1], 0, 3)
    with pytest.raises(SeriesError):
        f.invert()
    g = f.normalized().invert()
    assert g.valuation == -1


def test_euler_pentagonal():
    P = 200
    e = product_with_exponents([(n, 1) for n in range(1, P)], P)
    ref = {}
    k = 0
    while True:
        hits = False
        for kk in {k, -k}:
            n = kk * (3 * kk - 1) // 2
            if n < P:
                ref[n] = (-1) ** (kk % 2)
                hits = True
        if not hits:
            break
        k += 1
    assert e.to_dict() == ref


def test_scaled_monomials_in_product():
    # (1 - 2q)^-1 = sum 2^n q^n
    f = product_with_exponents([((1, 2), -1)], 10)
    assert [f[n] for n in range(10)] == [2 ** n for n in range(10)]


@st.composite
def biseries(draw, rows=4, hi=5):
    coeffs = draw(st.dictionaries(st.tuples(st.integers(0, rows - 1), st.integers(0, hi - 1)),
                                  st.integers(-5, 5), max_size=10))
    return BiSeries(coeffs, 0, rows, 0, hi)


@given(biseries(), biseries())
def test_biseries_product_matches_convolution(a, b):
    c = a * b
    ref = {}
    for (i1, i2), x in a.coeffs.items():
        for (j1, j2), y in b.coeffs.items():
            k = (i1 + j1, i2 + j2)
            ref[k] = ref.get(k, 0) + x * y
    for e1 in range(c.v1, c.n1):
        lo, hi = c.window(e1)
        for e2 in range(lo, hi):
            assert c[(e1, e2)] == ref.get((e1, e2), 0)


@given(biseries(), biseries(), biseries())
def test_biseries_product_associates(a, b, c):
    x, y = (a * b) * c, a * (b * c)
    assert x.lo == y.lo and x.hi == y.hi
    assert x.coeffs == y.coeffs


def test_biseries_window_violation():
    with pytest.raises(WindowError):
        BiSeries({(0, 5): 1}, 0, 2, 0, 5)
    s = BiSeries({(0, 1): 1}, 0, 2, 0, 5)
    with pytest.raises(WindowError):
        s[(1, 5)]
    with pytest.raises(WindowError):
        s[(2, 0)]


factor_lists = st.lists(
    st.tuples(st.tuples(st.integers(-3, 3), st.integers(1, 4)), st.integers(-3, 3)),
    min_size=1, max_size=6,
)


@settings(max_examples=60)
@given(factor_lists, st.randoms())
def test_graded_product_order_independent(factors, rnd):
    shuffled = list(factors)
    rnd.shuffle(shuffled)
    grade = lambda k: k[1]
    assert graded_product(factors, grade, 6) == graded_product(shuffled, grade, 6)


@given(st.lists(st.tuples(st.integers(1, 12), st.integers(-4, 4)), min_size=1, max_size=6))
def test_graded_product_matches_qseries(factors):
    P = 13
    g = graded_product([((n,), e) for n, e in factors], lambda k: k[0], P - 1)
    f = product_with_exponents(factors, P)
    assert {k[0]: Fraction(c) for k, c in g.items()} == f.to_dict()


def test_graded_product_rejects_negative_grade_zero_exponent():
    with pytest.raises(SeriesError):
        graded_product([((1, 0), -1)], lambda k: k[1], 3)
    # a positive exponent is a finite binomial and is fine
    assert graded_product([((1, 0), 2)], lambda k: k[1], 3) == {(0, 0): 1, (1, 0): -2, (2, 0): 1}
