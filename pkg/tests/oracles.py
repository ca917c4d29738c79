"""Independent reference computations used by the tests.

Nothing here imports borcherds_lab; each routine takes a different path from
the package code it checks.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import mpmath


def bernoulli_akiyama_tanigawa(n: int) -> Fraction:
    """B_n with B_1 = +1/2 (the algorithm's native convention)."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def kronecker_symbol(D: int, n: int) -> int:
    """(D/n) for prime D = 1 mod 4, via quadratic residues mod D."""
    r = n % D
    if r == 0:
        return 0
    squares = {(x * x) % D for x in range(1, D)}
    return 1 if r in squares else -1


def l_neg_by_power_sums(D: int, k: int) -> Fraction:
    """L(1-k, chi_D) = -B_{k,chi}/k with B_{k,chi} = D^{k-1} sum_a chi(a) B_k(a/D).

    B_k(x) is expanded from the Akiyama-Tanigawa numbers (B_1 sign flipped).
    """
    def bern(j):
        b = bernoulli_akiyama_tanigawa(j)
        return -b if j == 1 else b

    def bpoly(x):
        return sum(math.comb(k, j) * bern(j) * x ** (k - j) for j in range(k + 1))

    bk = Fraction(D) ** (k - 1) * sum(kronecker_symbol(D, a) * bpoly(Fraction(a, D)) for a in range(1, D))
    return -bk / k


def l_neg1_mpmath(D: int, dps: int = 40):
    """(L(-1, chi_D), L'(-1, chi_D)) from mpmath's Hurwitz zeta."""
    with mpmath.workdps(dps):
        s = -1
        val = sum(kronecker_symbol(D, a) * mpmath.zeta(s, mpmath.mpf(a) / D) for a in range(1, D))
        der = sum(kronecker_symbol(D, a) * mpmath.zeta(s, mpmath.mpf(a) / D, 1) for a in range(1, D))
        Ds = mpmath.mpf(D) ** (-s)
        return Ds * val, Ds * (der - mpmath.log(D) * val)


def zeta_neg1_mpmath(dps: int = 40):
    with mpmath.workdps(dps):
        return mpmath.zeta(-1), mpmath.zeta(-1, 1, 1)


def legendre_q_mpmath(s: float, z: float) -> float:
    """Q_{s-1}(z) for z > 1 (type 3 = cut along (-inf, 1])."""
    with mpmath.workdps(30):
        return float(mpmath.legenq(s - 1, 0, z, type=3).real)


def lattice_box(D: int, m: int, z1: complex, z2: complex, R: float, box: int) -> set:
    """All (a, b, u, v) in a box with u^2 - Dv^2 + 4Dab = 4m, u = v mod 2, argument <= R."""
    pts = set()
    y1, y2 = z1.imag, z2.imag
    r = math.sqrt(D)
    for a, b, u, v in itertools.product(range(-box, box + 1), repeat=4):
        if (u - v) % 2 or u * u - D * v * v + 4 * D * a * b != 4 * m:
            continue
        w = (a * z1 * z2 + b) + v * (z1 + z2) / 2 + u * (z1 - z2) / (2 * r)
        if 1 + D * abs(w) ** 2 / (2 * y1 * y2 * m) <= R:
            pts.add((a, b, u, v))
    return pts


def coefficient_convolution(a: dict, b: dict, lo: int, hi: int) -> dict:
    """Plain double loop for the product of two coefficient maps, kept on [lo, hi)."""
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            if lo <= i + j < hi:
                out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}
