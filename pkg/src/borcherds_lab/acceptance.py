"""The ten exit criteria as runnable checks, used by ``borcherds-lab verify-all``."""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import _kernels
from .arith import chi, l_value_neg, zeta_neg1
from .classical import partition, partitions_by_inversion, partitions_upto, verify_identity
from .green import (
    GreenParams,
    enumerate_lattice,
    green_integral,
    green_phi_fixed,
    gundlach_integral,
    hyperbolic_laplacian_fd,
    legendre_q,
    legendre_q_hyp,
    vol_T,
    vol_YK,
)
from .heights import faltings_height, intersection_series, self_intersection
from .hilbert import borcherds_expand, borcherds_factors, evaluate, s_transform_ratio
from .lvalues import (
    dirichlet_l_deriv_neg1,
    dirichlet_l_neg1,
    zeta_deriv_neg1,
    zeta_value_neg1,
)
from .plus_space import builtin_f1, dim_plus_cusp, pairing, plus_eisenstein
from .quadfield import gundlach_chamber, gundlach_rho

__all__ = ["CRITERIA", "CriterionResult", "run_all"]


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0
    budget: float | None = None

    @property
    def passed(self) -> bool:
        timing_ok = self.budget is None or self.seconds < self.budget
        return timing_ok and all(ok for _, ok, _ in self.checks)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number:2d}: {self.title} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "pass": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [{"name": n, "pass": ok, "detail": d} for n, ok, d in self.checks],
        }


def _c1(out):
    for ident, orders in (("delta-product", 50), ("j-double-product", (6, 6)), ("e4-product", 4)):
        rep = verify_identity(ident, orders)
        out.append((ident, rep.passed, f"{len(rep.comparisons)} coefficients, {len(rep.mismatches)} mismatches"))


def _c2(out):
    out.append(("p(4) = 5", partition(4) == 5, str(partition(4))))
    out.append(("p(100) = 190569292", partition(100) == 190569292, str(partition(100))))
    same = partitions_upto(2000) == partitions_by_inversion(2000)
    out.append(("recurrence = inversion, n <= 2000", same, ""))


def _c3(out):
    for D in (5, 13, 17):
        E = plus_eisenstein(D, 2, 200)
        ok = E[0] == 1
        for m in range(1, 201):
            if (E[m] == 0) != (chi(D, m) == -1):
                ok = False
        out.append((f"C(0,0)=1 and C(m,0)=0 iff chi(m)=-1, D={D}", ok, ""))
    c0 = pairing(builtin_f1(), plus_eisenstein(5, 2, 20), 1)[0]
    out.append(("constant term of <f1, E2(.,0)>", c0 == 0, str(c0)))
    dims = {D: dim_plus_cusp(D) for D in (5, 13, 17, 29)}
    out.append(("dimension formula", dims == {5: 0, 13: 0, 17: 0, 29: 1}, str(dims)))


def _c4(out):
    f, ch, rho = builtin_f1(), gundlach_chamber(), gundlach_rho()
    E = borcherds_expand(f, ch, rho, 3)
    out.append(("weight 5", E.weight == 5, str(E.weight)))
    out.append(("coefficient 1 at the Weyl vector", E.offset_coeff(0, 0) == 1, str(E.offset_coeff(0, 0))))
    out.append(("integral with gcd 1", E.is_integral() and E.content() == 1, f"gcd {E.content()}"))
    n = len(borcherds_factors(f, ch, 3))
    rng = random.Random(20240501)
    same = True
    for _ in range(5):
        order = list(range(n))
        rng.shuffle(order)
        same &= borcherds_expand(f, ch, rho, 3, order=order) == E
    same &= borcherds_expand(f, ch, rho, 3, order=list(reversed(range(n)))) == E
    out.append(("independent of factor order", same, f"{n} factors"))


def _c5(out):
    E = borcherds_expand(builtin_f1(), gundlach_chamber(), gundlach_rho(), 3)
    worst = 0.0
    for z1, z2 in ((0.3 + 2j, 0.1 + 1.4j), (-0.2 + 1.1j, 0.45 + 0.9j), (0.05 + 0.8j, 0.7 + 1.7j)):
        a = abs(evaluate(E, z1, z2))
        b = abs(evaluate(E, z1 + 1, z2 + 1))
        worst = max(worst, abs(a - b) / a)
    out.append(("translation invariance <= 1e-12", worst <= 1e-12, f"{worst:.2e}"))
    ratio = s_transform_ratio(E, 2j, 1j)
    out.append(("S-transformation ratio within 1e-2", abs(ratio - 1) <= 1e-2, f"{ratio:.6f}"))
    z = 2j + 0.3
    diag = abs(evaluate(E, z, z))
    grid = [complex(x, y) for x in (-0.3, 0.0, 0.3) for y in (1.7, 2.0, 2.3)]
    ref = max(abs(evaluate(E, z, w)) for w in grid if w != z)
    out.append(("diagonal value <= 1e-3 of grid max", diag <= 1e-3 * ref, f"{diag:.2e} vs {ref:.2e}"))


def _brute_lattice(D, m, z1, z2, R, box):
    """Scan a box in (a, b, v), solve u^2 = 4m - 4Dab + Dv^2 exactly. Also reports box contact."""
    y1, y2 = z1.imag, z2.imag
    sq = math.sqrt(D)
    pts = set()
    touches = False
    for a, b, v in itertools.product(range(-box, box + 1), repeat=3):
        u2 = 4 * m - 4 * D * a * b + D * v * v
        if u2 < 0:
            continue
        r = math.isqrt(u2)
        if r * r != u2 or (r - v) % 2:
            continue
        for u in {r, -r}:
            w = (a * (z1 * z2) + b) + (v * ((z1 + z2) / 2) + u * ((z1 - z2) / (2 * sq)))
            if 1 + abs(w) ** 2 * D / (2 * y1 * y2 * m) <= R:
                pts.add((a, b, u, v))
                touches |= max(abs(a), abs(b), abs(v)) == box
    return pts, touches


LATTICE_INSTANCES = [
    (5, 1, 1 + 2j, 0.7 + 1.5j, 30.0),
    (5, 4, 0.2 + 1.3j, -0.4 + 1.1j, 20.0),
    (5, 5, 0.1 + 1.0j, 0.3 + 0.8j, 25.0),
    (13, 1, 0.5 + 1.2j, 0.1 + 1.6j, 15.0),
    (13, 3, -0.2 + 0.9j, 0.4 + 1.3j, 40.0),
    (5, 2, 1 + 2j, 0.7 + 1.5j, 30.0),
]


def _c6(out):
    q0 = max(abs(legendre_q(1.0, z) - 0.5 * math.log((z + 1) / (z - 1))) / (0.5 * math.log((z + 1) / (z - 1)))
             for z in (1 + 1e-6, 1.01, 3.0, 50.0))
    out.append(("Q_0 closed form <= 1e-8", q0 <= 1e-8, f"{q0:.2e}"))
    dual = max(abs(legendre_q(s, z) - float(legendre_q_hyp(s, z))) / legendre_q(s, z)
               for s in (1.5, 2.0, 3.0) for z in (1.001, 2.0, 10.0))
    out.append(("quadrature vs hypergeometric <= 1e-8", dual <= 1e-8, f"{dual:.2e}"))
    z1, z2 = 1 + 2j, 0.7 + 1.5j
    a, b, u, v, _, _ = _kernels.enumerate_lattice_arrays(5, 1, z1, z2, 200.0)
    pts = (a, b, u, v)
    errs = []
    f1 = lambda z: green_phi_fixed(5, 1, 2.0, pts, z, z2)
    f2 = lambda z: green_phi_fixed(5, 1, 2.0, pts, z1, z)
    errs.append(abs(hyperbolic_laplacian_fd(f1, z1) / f1(z1) - 2.0) / 2.0)
    errs.append(abs(hyperbolic_laplacian_fd(f2, z2) / f2(z2) - 2.0) / 2.0)
    out.append(("Laplace eigenvalue s(s-1) <= 1e-3", max(errs) <= 1e-3, f"{max(errs):.2e}"))
    ok = True
    for (D, m, w1, w2, R) in LATTICE_INSTANCES:
        got = {(p.a, p.b, p.lam.u, p.lam.v) for p in enumerate_lattice(D, m, w1, w2, R)}
        ref, touches = _brute_lattice(D, m, w1, w2, R, 24)
        ok &= got == ref and not touches
    out.append(("lattice enumeration = brute force", ok, f"{len(LATTICE_INSTANCES)} instances"))


def _c7(out):
    out.append(("vol(Y_K) = 1/30 for D=5", vol_YK(5) == Fraction(1, 30), str(vol_YK(5))))
    out.append(("vol(T(1)) = 1/6 for D=5", vol_T(5, 1) == Fraction(1, 6), str(vol_T(5, 1))))
    ok = True
    for D in (5, 13):
        E = plus_eisenstein(D, 2, 50)
        V = vol_YK(D)
        ok &= all(-2 / V * vol_T(D, m) == E[m] for m in range(1, 51)) and E[0] == 1
    out.append(("Eisenstein reconstruction m <= 50", ok, "D in {5, 13}"))


def _c8(out):
    vals = [zeta_value_neg1(), zeta_deriv_neg1()]
    for D in (5, 13):
        vals += [dirichlet_l_neg1(D), dirichlet_l_deriv_neg1(D)]
    worst = max(v.agreement for v in vals)
    out.append(("dual-method agreement <= 1e-10", worst <= 1e-10 and all(v.abs_error_estimate <= 1e-10 for v in vals),
                f"{worst:.1e}"))
    e1 = abs(zeta_value_neg1().value - float(zeta_neg1()))
    e2 = max(abs(dirichlet_l_neg1(D).value - float(l_value_neg(D, 2))) for D in (5, 13))
    out.append(("exact/float consistency", max(e1, e2) <= 1e-10, f"{max(e1, e2):.1e}"))


def _c9(out):
    lhs = -green_integral(5, 1)
    rhs = gundlach_integral(5)
    out.append(("Gundlach integral, two routes <= 1e-10", abs(lhs - rhs) <= 1e-10, f"{lhs:.15f} vs {rhs:.15f}"))


def _c10(out):
    worst = 0.0
    for D in (5, 13):
        for k in (Fraction(1), Fraction(3, 2), Fraction(5)):
            a, b = self_intersection(D, k), self_intersection(D, 2 * k)
            worst = max(worst, abs(b - 8 * a) / abs(8 * a))
            h1, h2 = faltings_height(D, 1, k), faltings_height(D, 1, 2 * k)
            worst = max(worst, abs(h2 - 4 * h1) / abs(4 * h1))
    out.append(("k^3 / k^2 scaling <= 1e-12", worst <= 1e-12, f"{worst:.1e}"))
    worst = 0.0
    for D in (5, 13):
        for k in (Fraction(1), Fraction(2)):
            lhs = -self_intersection(D, k) / (2 * float(k))
            rhs = intersection_series(D, k, 0).constant_term
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
    out.append(("constant-term identity <= 1e-12", worst <= 1e-12, f"{worst:.1e}"))
    from .lvalues import zeta_logderiv_neg1

    h = faltings_height(5, 1, 1)
    direct = -2 * float(vol_T(5, 1)) * (zeta_logderiv_neg1().value + 0.5)
    out.append(("m=1 sigma term vanishes", abs(h - direct) <= 1e-12 * abs(direct), f"{h:.12f}"))


CRITERIA: list[tuple[int, str, Callable, float | None]] = [
    (1, "exact product identities", _c1, 10.0),
    (2, "partition function", _c2, 5.0),
    (3, "plus-space Eisenstein, pairing, dimensions", _c3, None),
    (4, "Borcherds lift D=5, trace bound 3", _c4, 10.0),
    (5, "numerical Hilbert modularity", _c5, None),
    (6, "Legendre Q, Green function, lattice", _c6, 60.0),
    (7, "volumes", _c7, None),
    (8, "L-values", _c8, None),
    (9, "Gundlach integral cross-check", _c9, None),
    (10, "intersection numbers and heights", _c10, None),
]


def run_criterion(number: int) -> CriterionResult:
    for n, title, fn, budget in CRITERIA:
        if n == number:
            res = CriterionResult(n, title, budget=budget)
            t = time.perf_counter()
            try:
                fn(res.checks)
            except Exception as exc:  # a crash is a failed criterion, reported not hidden
                res.checks.append(("raised", False, f"{type(exc).__name__}: {exc}"))
            res.seconds = time.perf_counter() - t
            return res
    raise KeyError(f"no criterion {number}")


def run_all() -> list[CriterionResult]:
    return [run_criterion(n) for n, *_ in CRITERIA]
