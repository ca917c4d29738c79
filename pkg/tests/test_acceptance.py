"""Exit criteria 1-10, each at its stated tolerance.

A one-line PASS/FAIL summary per criterion is printed at the end of the run.
"""

import itertools
import math
import random
import time
from fractions import Fraction

import mpmath
import pytest

from borcherds_lab import _kernels
from borcherds_lab.arith import chi, l_value_neg, zeta_neg1
from borcherds_lab.classical import partition, partitions_by_inversion, partitions_upto, verify_identity
from borcherds_lab.green import (
    enumerate_lattice,
    green_integral,
    green_phi_fixed,
    hyperbolic_laplacian_fd,
    legendre_q,
    legendre_q_hyp,
    vol_T,
    vol_YK,
)
from borcherds_lab.heights import faltings_height, intersection_series, self_intersection
from borcherds_lab.hilbert import borcherds_expand, borcherds_factors, evaluate, s_transform_ratio
from borcherds_lab.lvalues import (
    dirichlet_l_deriv_neg1,
    dirichlet_l_neg1,
    zeta_deriv_neg1,
    zeta_logderiv_neg1,
    zeta_value_neg1,
)
from borcherds_lab.plus_space import builtin_f1, dim_plus_cusp, pairing, plus_eisenstein
from borcherds_lab.quadfield import gundlach_chamber, gundlach_rho

pytestmark = pytest.mark.acceptance


@pytest.mark.acceptance(1, "exact identity suite")
def test_criterion_01_identities():
    t = time.perf_counter()
    delta = verify_identity("delta-product", 50)
    jj = verify_identity("j-double-product", (6, 6))
    e4 = verify_identity("e4-product", 4)
    elapsed = time.perf_counter() - t
    for rep in (delta, jj, e4):
        assert rep.comparisons and not rep.mismatches, rep.to_json()
    assert len(delta.comparisons) == 50
    assert elapsed < 10


@pytest.mark.acceptance(2, "partition suite")
def test_criterion_02_partitions():
    t = time.perf_counter()
    assert partition(4) == 5
    assert partition(100) == 190569292
    assert partitions_upto(2000) == partitions_by_inversion(2000)
    assert time.perf_counter() - t < 5


@pytest.mark.acceptance(3, "plus-space suite")
def test_criterion_03_plus_space():
    for D in (5, 13, 17):
        E = plus_eisenstein(D, 2, 200)
        assert E[0] == 1
        for m in range(1, 201):
            assert (E[m] == 0) == (chi(D, m) == -1), (D, m)
    E5 = plus_eisenstein(5, 2, 30)
    assert pairing(builtin_f1(), E5, 1)[0] == 0
    assert [dim_plus_cusp(D) for D in (5, 13, 17, 29)] == [0, 0, 0, 1]


@pytest.mark.acceptance(4, "Borcherds lift D=5, trace bound 3")
def test_criterion_04_lift():
    t = time.perf_counter()
    f, ch, rho = builtin_f1(), gundlach_chamber(), gundlach_rho()
    E = borcherds_expand(f, ch, rho, 3)
    assert E.weight == 5
    assert E.offset_coeff(0, 0) == 1
    assert E.is_integral()
    assert math.gcd(*(int(c) for c in E.coeffs.values())) == 1
    n = len(borcherds_factors(f, ch, 3))
    orders = [list(reversed(range(n)))]
    rng = random.Random(7)
    for _ in range(4):
        o = list(range(n))
        rng.shuffle(o)
        orders.append(o)
    for o in orders:
        assert borcherds_expand(f, ch, rho, 3, order=o).coeffs == E.coeffs
    assert time.perf_counter() - t < 10


@pytest.mark.acceptance(5, "numerical Hilbert modularity")
def test_criterion_05_modularity():
    E = borcherds_expand(builtin_f1(), gundlach_chamber(), gundlach_rho(), 3)
    for z1, z2 in [(0.3 + 2j, 0.1 + 1.4j), (-0.2 + 1.1j, 0.45 + 0.9j), (0.05 + 0.8j, 0.7 + 1.7j)]:
        a = abs(evaluate(E, z1, z2))
        b = abs(evaluate(E, z1 + 1, z2 + 1))
        assert abs(a - b) <= 1e-12 * a
    assert abs(s_transform_ratio(E, 2j, 1j) - 1) <= 1e-2
    z = 0.3 + 2j
    grid = [complex(x, y) for x in (-0.3, 0.0, 0.3) for y in (1.7, 2.0, 2.3)]
    ref = max(abs(evaluate(E, z, w)) for w in grid if w != z)
    assert abs(evaluate(E, z, z)) <= 1e-3 * ref


def _brute_box(D, m, z1, z2, R, box):
    pts = set()
    for a, b, u, v in itertools.product(range(-box, box + 1), repeat=4):
        if u * u - D * v * v + 4 * D * a * b != 4 * m or (u - v) % 2:
            continue
        w = (a * z1 * z2 + b) + v * (z1 + z2) / 2 + u * (z1 - z2) / (2 * math.sqrt(D))
        if 1 + D * abs(w) ** 2 / (2 * z1.imag * z2.imag * m) <= R:
            pts.add((a, b, u, v))
    return pts


@pytest.mark.acceptance(6, "Green-function suite")
def test_criterion_06_green():
    t = time.perf_counter()
    for z in (1 + 1e-6, 1.01, 3.0, 50.0):
        q0 = 0.5 * math.log((z + 1) / (z - 1))
        assert abs(legendre_q(1.0, z) - q0) <= 1e-8 * q0
    for s in (1.5, 2.0, 3.0):
        for z in (1.001, 2.0, 10.0):
            q = legendre_q(s, z)
            assert abs(q - float(legendre_q_hyp(s, z))) <= 1e-8 * q
    z1, z2 = 1 + 2j, 0.7 + 1.5j
    a, b, u, v, _, _ = _kernels.enumerate_lattice_arrays(5, 1, z1, z2, 200.0)
    pts = (a, b, u, v)
    f1 = lambda z: green_phi_fixed(5, 1, 2.0, pts, z, z2)
    f2 = lambda z: green_phi_fixed(5, 1, 2.0, pts, z1, z)
    assert abs(hyperbolic_laplacian_fd(f1, z1) / f1(z1) - 2.0) <= 2e-3
    assert abs(hyperbolic_laplacian_fd(f2, z2) / f2(z2) - 2.0) <= 2e-3
    # boxes sized so that no point in range reaches the edge
    for D, m, w1, w2, R, box in [(5, 1, z1, z2, 12.0, 6), (13, 1, 0.5 + 1.2j, 0.1 + 1.6j, 15.0, 6),
                                 (5, 4, 0.2 + 1.3j, -0.4 + 1.1j, 6.0, 8), (5, 2, z1, z2, 30.0, 4)]:
        got = {(p.a, p.b, p.lam.u, p.lam.v) for p in enumerate_lattice(D, m, w1, w2, R)}
        ref = _brute_box(D, m, w1, w2, R, box)
        assert got == ref, (D, m)
        assert all(max(map(abs, p)) < box for p in ref)
    assert time.perf_counter() - t < 60


@pytest.mark.acceptance(7, "volume suite")
def test_criterion_07_volumes():
    assert vol_YK(5) == Fraction(1, 30)
    assert vol_T(5, 1) == Fraction(1, 6)
    for D in (5, 13):
        E = plus_eisenstein(D, 2, 50)
        V = vol_YK(D)
        assert E[0] == 1
        for m in range(1, 51):
            assert -2 * vol_T(D, m) / V == E[m]


@pytest.mark.acceptance(8, "L-value suite")
def test_criterion_08_lvalues():
    shipped = [zeta_value_neg1(), zeta_deriv_neg1()]
    for D in (5, 13, 17, 29):
        shipped += [dirichlet_l_neg1(D), dirichlet_l_deriv_neg1(D)]
    for lv in shipped:
        assert lv.agreement <= 1e-10, lv
        assert lv.abs_error_estimate <= 1e-10, lv
    assert abs(zeta_value_neg1().value - float(zeta_neg1())) <= 1e-15
    for D in (5, 13, 17, 29):
        assert abs(dirichlet_l_neg1(D).value - float(l_value_neg(D, 2))) <= 1e-12


def _l_deriv_mpmath(D):
    # L(s) = D^{-s} sum_a chi(a) zeta(s, a/D), differentiated at s = -1
    with mpmath.workdps(30):
        val = sum(chi(D, a) * mpmath.zeta(-1, mpmath.mpf(a) / D) for a in range(1, D)) * D
        der = sum(chi(D, a) * mpmath.zeta(-1, mpmath.mpf(a) / D, 1) for a in range(1, D)) * D
        return float(der - mpmath.log(D) * val), float(val)


@pytest.mark.acceptance(9, "Gundlach integral cross-check")
def test_criterion_09_gundlach():
    dL, L = _l_deriv_mpmath(5)
    rhs = -float(zeta_neg1()) * (2 * dL / L + 1 + math.log(5))
    assert abs(-green_integral(5, 1) - rhs) <= 1e-10


@pytest.mark.acceptance(10, "intersection numbers and heights")
def test_criterion_10_heights():
    for D in (5, 13):
        for k in (Fraction(1), Fraction(3, 2), Fraction(4)):
            s1, s2 = self_intersection(D, k), self_intersection(D, 2 * k)
            assert abs(s2 - 8 * s1) <= 1e-12 * abs(8 * s1)
            h1, h2 = faltings_height(D, 1, k), faltings_height(D, 1, 2 * k)
            assert abs(h2 - 4 * h1) <= 1e-12 * abs(4 * h1)
            const = intersection_series(D, k, 0).constant_term
            assert abs(-self_intersection(D, k) / (2 * float(k)) - const) <= 1e-12 * abs(const)
    # sigma_1 is identically 2, so the height reduces to the m-free bracket
    for D in (5, 13):
        direct = -2 * float(vol_T(D, 1)) * (zeta_logderiv_neg1().value + 0.5)
        assert abs(faltings_height(D, 1, 1) - direct) <= 1e-12 * abs(direct)
