"""Level-1 forms (E_k, Delta, j, J), the partition function and the three
product identities checked coefficient by coefficient."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .arith import bernoulli
from .series import BiSeries, QSeries, product_with_exponents

__all__ = [
    "E4_PRODUCT_EXPONENTS",
    "IdentityReport",
    "InsufficientCoefficients",
    "Level1Form",
    "asymptotic_ratio",
    "delta",
    "eisenstein_level1",
    "j_function",
    "J_function",
    "partition",
    "partitions_by_inversion",
    "partitions_upto",
    "verify_identity",
]


class InsufficientCoefficients(ValueError):
    def __init__(self, index: int, what: str = "c"):
        self.index = index
        super().__init__(f"insufficient input coefficients: {what}({index}) is not available")


@dataclass(frozen=True)
class Level1Form:
    weight: int
    expansion: QSeries

    def __getitem__(self, n: int) -> Fraction:
        return self.expansion[n]

    @property
    def precision(self) -> int:
        return self.expansion.precision


def _sigma_table(k: int, n_max: int) -> list[int]:
    """sigma_k(n) for 0 <= n < n_max by a divisor sieve (entry 0 unused)."""
    s = [0] * max(n_max, 1)
    for d in range(1, n_max):
        dk = d ** k
        for m in range(d, n_max, d):
            s[m] += dk
    return s


def eisenstein_level1(k: int, precision: int) -> Level1Form:
    if k % 2 or k < 4:
        raise ValueError(f"E_k needs even k >= 4, got {k}")
    factor = Fraction(-2 * k) / bernoulli(k)
    sig = _sigma_table(k - 1, precision)
    coeffs = [Fraction(1)] + [factor * sig[n] for n in range(1, precision)]
    return Level1Form(k, QSeries(coeffs[:precision], 0, precision))


def delta(precision: int) -> Level1Form:
    """q * prod (1 - q^n)^24 to O(q^precision)."""
    if precision < 2:
        raise ValueError("delta needs precision >= 2")
    h = product_with_exponents([(n, 24) for n in range(1, precision - 1)], precision - 1)
    return Level1Form(12, h.shift(1))


def j_function(precision: int) -> Level1Form:
    """j = E4^3 / Delta to O(q^precision)."""
    if precision < 1:
        raise ValueError("j needs precision >= 1")
    e4 = eisenstein_level1(4, precision + 1).expansion
    d = delta(precision + 2).expansion
    j = (e4 * e4 * e4) * d.invert()
    return Level1Form(0, j.truncate(precision))


def J_function(precision: int) -> Level1Form:
    j = j_function(precision)
    return Level1Form(0, j.expansion - 744)


# -- partitions --------------------------------------------------------------

_PARTS: list[int] = [1]


def partitions_upto(n: int) -> list[int]:
    """p(0..n) by Euler's pentagonal recurrence (cached)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p = _PARTS
    for m in range(len(p), n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p.append(total)
    return p[: n + 1]


def partition(n: int) -> int:
    return partitions_upto(n)[n]


def partitions_by_inversion(n: int) -> list[int]:
    """p(0..n) as coefficients of 1 / prod (1 - q^k)."""
    h = product_with_exponents([(k, 1) for k in range(1, n + 1)], n + 1)
    return [int(c) for c in h.invert().coeffs]


def asymptotic_ratio(kind: str, n: int) -> float:
    """Exact value over its leading asymptotic, computed in log space."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if kind == "partition":
        exact = partition(n)
        K = math.pi * math.sqrt(2.0 / 3.0)
        log_main = K * math.sqrt(n) - math.log(4 * n * math.sqrt(3.0))
    elif kind in ("j-coefficient", "j"):
        exact = int(j_function(n + 1)[n])
        log_main = 4 * math.pi * math.sqrt(n) - math.log(math.sqrt(2.0)) - 0.75 * math.log(n)
    else:
        raise ValueError(f"unknown asymptotic kind {kind!r}")
    return math.exp(math.log(exact) - log_main)


# -- identity verification ---------------------------------------------------

# known exponents c(n^2) of the weight 1/2 input form for the E4 product
E4_PRODUCT_EXPONENTS: dict[int, int] = {1: -240, 4: 26760, 9: -4096240}


@dataclass
class IdentityReport:
    identity: str
    orders: tuple
    comparisons: list = field(default_factory=list)

    @property
    def mismatches(self) -> list:
        return [c for c in self.comparisons if c["lhs"] != c["rhs"]]

    @property
    def passed(self) -> bool:
        return bool(self.comparisons) and not self.mismatches

    def to_json(self) -> dict:
        def enc(c):
            return {k: (str(v) if isinstance(v, Fraction) else v) for k, v in c.items()}

        return {
            "identity": self.identity,
            "orders": list(self.orders),
            "compared": len(self.comparisons),
            "mismatches": [enc(c) for c in self.mismatches],
            "pass": self.passed,
        }


def _compare_q(name: str, order: int, lhs: QSeries, rhs: QSeries) -> IdentityReport:
    rep = IdentityReport(name, (order,))
    lo = min(lhs.valuation, rhs.valuation)
    for n in range(lo, order):
        rep.comparisons.append({"index": n, "lhs": lhs[n], "rhs": rhs[n]})
    return rep


def _verify_delta(order: int) -> IdentityReport:
    prod = product_with_exponents([(n, 24) for n in range(1, order)], order - 1).shift(1)
    e4 = eisenstein_level1(4, order).expansion
    e6 = eisenstein_level1(6, order).expansion
    quotient = (e4 * e4 * e4 - e6 * e6) / 1728
    return _compare_q("delta-product", order, prod, quotient)


def _verify_e4(order: int, exponents: Mapping[int, int] | None) -> IdentityReport:
    exps = dict(E4_PRODUCT_EXPONENTS if exponents is None else exponents)
    factors = []
    for n in range(1, order):
        if n * n not in exps:
            raise InsufficientCoefficients(n * n)
        factors.append((n, exps[n * n]))
    prod = product_with_exponents(factors, order)
    e4 = eisenstein_level1(4, order).expansion
    return _compare_q("e4-product", order, prod, e4)


def _verify_j_double(M: int, N: int, c: Sequence[int] | None = None) -> IdentityReport:
    """q1-rows -1..M-1 and q2-exponents below N of j(z1) - j(z2)."""
    if M < 1 or N < 1:
        raise ValueError("j-double-product orders must be positive")
    cap = N + M
    # c(mn) for m <= M and n < cap + M
    need = M * (cap + M)
    if c is None:
        J = J_function(need + 1).expansion
        c = [int(J[k]) for k in range(0, need + 1)]
    elif len(c) <= need:
        raise InsufficientCoefficients(len(c))

    def coef(k: int) -> int:
        if k == -1:
            return 1
        if k < -1 or k == 0:
            return 0
        return c[k]

    factors = []
    for m in range(1, M + 1):
        for n in range(-1, cap + M):
            e = coef(m * n)
            if e:
                factors.append(((m, n), e))
    rhs = product_with_exponents(factors, M + 1, bivariate=True, q2_precision=cap).shift(-1, 0)

    rows = list(range(-1, M))
    lo = [0 if e1 != 0 else -1 for e1 in rows]
    hi = [cap] * len(rows)
    lhs_c: dict = {(-1, 0): 1, (0, -1): -1}
    for k in range(1, cap):
        lhs_c[(0, k)] = -coef(k)
    for e1 in range(1, M):
        lhs_c[(e1, 0)] = coef(e1)
    lhs = BiSeries(lhs_c, -1, M, lo, hi)

    rep = IdentityReport("j-double-product", (M, N))
    for e1 in rows:
        if min(lhs.window(e1)[1], rhs.window(e1)[1]) < N:
            raise RuntimeError(f"row q1^{e1} window too narrow for N={N}")
    for e1, e2, a, b in lhs.window_agreement(rhs, max_e2=N):
        rep.comparisons.append({"index": [e1, e2], "lhs": a, "rhs": b})
    return rep


IDENTITIES = ("delta-product", "e4-product", "j-double-product")


def verify_identity(identity: str, orders, exponents: Mapping[int, int] | None = None) -> IdentityReport:
    """Compare both sides of a product identity exactly.

    ``orders`` is an int (O(q^order)) for the univariate identities and a pair
    (M, N) for the j double product.
    """
    if isinstance(orders, int):
        orders = (orders,)
    orders = tuple(int(x) for x in orders)
    if identity == "delta-product":
        return _verify_delta(orders[0])
    if identity == "e4-product":
        return _verify_e4(orders[0], exponents)
    if identity == "j-double-product":
        if len(orders) == 1:
            orders = orders * 2
        return _verify_j_double(*orders[:2])
    raise ValueError(f"unknown identity {identity!r}; choose from {', '.join(IDENTITIES)}")
