import math

import pytest

from borcherds_lab.classical import (
    E4_PRODUCT_EXPONENTS,
    InsufficientCoefficients,
    J_function,
    asymptotic_ratio,
    delta,
    eisenstein_level1,
    j_function,
    partition,
    partitions_by_inversion,
    partitions_upto,
    verify_identity,
)

TAU = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612]


def sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def test_eisenstein_against_divisor_sums():
    E4 = eisenstein_level1(4, 30)
    E6 = eisenstein_level1(6, 30)
    assert E4[0] == 1 and E6[0] == 1
    for n in range(1, 30):
        assert E4[n] == 240 * sigma(3, n)
        assert E6[n] == -504 * sigma(5, n)
    assert [E4[n] for n in range(3)] == [1, 240, 2160]


@pytest.mark.parametrize("k", [2, 3, 0, -4])
def test_eisenstein_rejects_bad_weight(k):
    with pytest.raises(ValueError):
        eisenstein_level1(k, 5)


def test_delta_ramanujan_tau():
    d = delta(12)
    assert d.weight == 12
    assert d.expansion.valuation == 1
    assert [d[n] for n in range(1, 12)] == TAU
    assert d.expansion.is_integral()


def test_delta_by_direct_multiplication():
    # q * prod (1 - q^n)^24 by repeated integer polynomial multiplication
    P = 25
    poly = [1] + [0] * (P - 1)
    for n in range(1, P):
        for _ in range(24):
            for i in range(P - 1, n - 1, -1):
                poly[i] -= poly[i - n]
    d = delta(P + 1)
    assert [d[n] for n in range(1, P + 1)] == poly


def test_j_coefficients():
    j = j_function(4)
    assert j.expansion.valuation == -1
    assert [j[n] for n in range(-1, 4)] == [1, 744, 196884, 21493760, 864299970]
    J = J_function(3)
    assert J[-1] == 1 and J[0] == 0
    assert j.expansion.is_integral()


def test_delta_times_j_is_e4_cubed():
    P = 40
    lhs = delta(P + 1).expansion * j_function(P).expansion
    e4 = eisenstein_level1(4, P).expansion
    assert lhs.agrees_with(e4 * e4 * e4, P)


def test_partition_values():
    assert partition(0) == 1
    assert partition(4) == 5
    assert partition(100) == 190569292
    assert partition(1000) == 24061467864032622473692149727991


def test_partition_recurrence_vs_inversion():
    assert partitions_upto(600) == partitions_by_inversion(600)


def test_partition_brute_force():
    def count(n, k):
        if n == 0:
            return 1
        return sum(count(n - j, j) for j in range(1, min(n, k) + 1))

    assert [count(n, n) for n in range(20)] == partitions_upto(19)


def test_asymptotic_ratios():
    r100 = asymptotic_ratio("partition", 100)
    r400 = asymptotic_ratio("partition", 400)
    assert 0.9 < r100 < 1.1
    assert abs(r400 - 1) < abs(r100 - 1)
    assert asymptotic_ratio("j-coefficient", 1) == pytest.approx(196884 / (math.exp(4 * math.pi) / math.sqrt(2)))
    with pytest.raises(ValueError):
        asymptotic_ratio("nope", 5)


@pytest.mark.parametrize("order", [2, 10, 50])
def test_delta_identity(order):
    rep = verify_identity("delta-product", order)
    assert rep.passed
    assert rep.to_json()["pass"] is True


def test_e4_identity_with_known_exponents():
    assert E4_PRODUCT_EXPONENTS == {1: -240, 4: 26760, 9: -4096240}
    assert verify_identity("e4-product", 4).passed


def test_e4_identity_beyond_known_data():
    with pytest.raises(InsufficientCoefficients) as exc:
        verify_identity("e4-product", 5)
    assert exc.value.index == 16
    assert "16" in str(exc.value)


def test_e4_identity_detects_wrong_exponent():
    rep = verify_identity("e4-product", 4, exponents={1: -240, 4: 26761, 9: -4096240})
    assert not rep.passed
    # c(4) is the exponent of (1 - q^2), so the first wrong coefficient is at q^2
    assert [m["index"] for m in rep.mismatches] == [2, 3]


def test_j_double_product():
    rep = verify_identity("j-double-product", (6, 6))
    assert rep.passed
    leading = [c for c in rep.comparisons if c["index"] == [-1, 0]]
    assert leading[0]["lhs"] == leading[0]["rhs"] == 1


def test_j_double_product_rows_are_constant():
    # for m >= 1 the q1^m row of j(z1) - j(z2) is the constant c(m)
    rep = verify_identity("j-double-product", (4, 4))
    J = J_function(5)
    for c in rep.comparisons:
        e1, e2 = c["index"]
        if e1 >= 1:
            assert c["rhs"] == (J[e1] if e2 == 0 else 0)


def test_unknown_identity():
    with pytest.raises(ValueError):
        verify_identity("theta", 3)
