"""Borcherds products on Hilbert modular surfaces as truncated Fourier series.

The product runs over chamber-positive nu in the inverse different with
exponent c~(D nu nu'); monomials q1^nu q2^nu' are graded by trace(nu), and the
expansion is exact for every exponent with trace(nu - rho) <= T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from . import _kernels
from .plus_space import PlusForm, UnknownCoefficient, tilde
from .quadfield import ChamberSpec, InvDiffElem, enumerate_invdiff
from .series import SeriesError, graded_product

__all__ = [
    "BorcherdsError",
    "HilbertExpansion",
    "borcherds_expand",
    "borcherds_factors",
    "evaluate",
    "s_transform_ratio",
    "tail_bound",
]


class BorcherdsError(ValueError):
    pass


@dataclass(frozen=True)
class HilbertExpansion:
    """sum a(nu) q1^nu q2^nu' with keys nu = (u, v) including the Weyl vector."""

    D: int
    weight: Fraction
    rho: InvDiffElem
    coeffs: dict = field(compare=True)
    trace_bound: int

    def __getitem__(self, nu) -> Fraction:
        key = (nu.u, nu.v) if isinstance(nu, InvDiffElem) else tuple(nu)
        if key[1] - self.rho.v > self.trace_bound:
            raise KeyError(f"trace of {key} exceeds the truncation bound")
        return self.coeffs.get(key, Fraction(0))

    def offset_coeff(self, du: int, dv: int) -> Fraction:
        return self[(self.rho.u + du, self.rho.v + dv)]

    def sorted_items(self):
        """Nonzero terms by increasing trace, then (u, v)."""
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coeffs.values())

    def content(self) -> int:
        g = 0
        for c in self.coeffs.values():
            g = gcd(g, int(c))
        return g

    def truncate(self, T: int) -> "HilbertExpansion":
        if T > self.trace_bound:
            raise ValueError("cannot raise the trace bound of an existing expansion")
        keep = {k: c for k, c in self.coeffs.items() if k[1] - self.rho.v <= T}
        return HilbertExpansion(self.D, self.weight, self.rho, keep, T)

    def _arrays(self):
        items = self.sorted_items()
        r = math.sqrt(self.D)
        u = np.array([k[0] for k, _ in items], dtype=np.float64)
        v = np.array([k[1] for k, _ in items], dtype=np.float64)
        nu1 = (v + u / r) / 2
        nu2 = (v - u / r) / 2
        a = np.array([float(c) for _, c in items], dtype=np.float64)
        return nu1, nu2, a


def borcherds_factors(f: PlusForm, chamber: ChamberSpec, T: int) -> list[tuple[tuple[int, int], int]]:
    """((u, v), c~(D nu nu')) for every chamber-positive nu with trace <= T."""
    if f.D != chamber.D:
        raise BorcherdsError("input form and chamber have different D")
    factors = []
    for nu in enumerate_invdiff(f.D, chamber, T, f.n_min):
        n = nu.scaled_norm()
        if n.denominator != 1:
            raise BorcherdsError(f"D nu nu' = {n} is not an integer at nu={nu}")
        n = int(n)
        try:
            e = tilde(f, n)
        except UnknownCoefficient:
            raise BorcherdsError(
                f"missing coefficient c({n}) needed for nu = (u={nu.u}, v={nu.v}); "
                f"the input form is known on [{f.n_min}, {f.n_max}]"
            ) from None
        if e.denominator != 1:
            raise BorcherdsError(f"exponent c~({n}) = {e} is not an integer")
        if e:
            factors.append(((nu.u, nu.v), int(e)))
    return factors


def borcherds_expand(f: PlusForm, chamber: ChamberSpec, rho: InvDiffElem, T: int,
                     order: Sequence[int] | None = None) -> HilbertExpansion:
    """Expand q1^rho q2^rho' prod (1 - q1^nu q2^nu')^{c~(D nu nu')} to trace(nu) <= T.

    ``order`` optionally permutes the factor list (the result must not depend on it).
    """
    if f.weight != 0:
        raise BorcherdsError("the lift takes a weight-0 input form")
    if rho.D != f.D:
        raise BorcherdsError("Weyl vector lives in a different field")
    factors = borcherds_factors(f, chamber, T) if T >= 0 else []
    if order is not None:
        if sorted(order) != list(range(len(factors))):
            raise ValueError("order must be a permutation of the factor indices")
        factors = [factors[i] for i in order]
    try:
        prod = graded_product(factors, grade=lambda k: k[1], max_grade=T) if factors else {(0, 0): 1}
    except SeriesError as exc:
        raise BorcherdsError(str(exc)) from None
    if T < 0:
        prod = {}
    coeffs = {(k[0] + rho.u, k[1] + rho.v): Fraction(c) for k, c in prod.items() if c}
    return HilbertExpansion(f.D, Fraction(f[0]), rho, coeffs, T)


def evaluate(expansion: HilbertExpansion, z1: complex, z2: complex, compensated: bool = False,
             backend: str | None = None) -> complex:
    """Sum a(nu) e(nu z1 + nu' z2) by increasing trace, then (u, v)."""
    z1, z2 = complex(z1), complex(z2)
    if z1.imag <= 0 or z2.imag <= 0:
        raise ValueError("both arguments must lie in the upper half plane")
    nu1, nu2, a = expansion._arrays()
    return _kernels.hilbert_terms_sum(nu1, nu2, a, z1, z2, compensated=compensated, backend=backend)


def tail_bound(expansion: HilbertExpansion, trace: int, z1: complex, z2: complex) -> float:
    """sum over stored terms at trace offset ``trace`` of |a(nu)| |e(nu z1 + nu' z2)|."""
    r = math.sqrt(expansion.D)
    y1, y2 = complex(z1).imag, complex(z2).imag
    total = 0.0
    for (u, v), c in expansion.sorted_items():
        if v - expansion.rho.v != trace:
            continue
        n1 = (v + u / r) / 2
        n2 = (v - u / r) / 2
        total += abs(float(c)) * math.exp(-2 * math.pi * (n1 * y1 + n2 * y2))
    return total


def s_transform_ratio(expansion: HilbertExpansion, z1: complex, z2: complex) -> float:
    """|Psi(-1/z1, -1/z2)| / (|z1 z2|^k |Psi(z1, z2)|)."""
    k = float(expansion.weight)
    num = abs(evaluate(expansion, -1 / complex(z1), -1 / complex(z2), compensated=True))
    den = abs(complex(z1)) ** k * abs(complex(z2)) ** k * abs(evaluate(expansion, z1, z2, compensated=True))
    return num / den

