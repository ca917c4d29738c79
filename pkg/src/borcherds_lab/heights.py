"""Closed-form arithmetic self-intersection numbers and Faltings heights of
Hirzebruch-Zagier divisors on the Hilbert modular surface of Q(sqrt D)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import DirichletChar, chi, l_value_neg, zeta_neg1
from .green import sigma_logderiv, vol_T
from .lvalues import zeta_logderiv_neg1, zetaK_logderiv_neg1
from .plus_space import plus_eisenstein

__all__ = [
    "bracket",
    "faltings_height",
    "intersection_series",
    "self_intersection",
    "zetaK_neg1",
]


def zetaK_neg1(D: int) -> Fraction:
    return zeta_neg1() * l_value_neg(D, 2)


def bracket(D: int) -> float:
    """zeta_K'/zeta_K(-1) + zeta'/zeta(-1) + 3/2 + log(D)/2."""
    return zetaK_logderiv_neg1(D).value + zeta_logderiv_neg1().value + 1.5 + 0.5 * math.log(D)


def self_intersection(D: int, k) -> float:
    """-k^3 zeta_K(-1) (bracket)."""
    DirichletChar(D)
    k = Fraction(k)
    if k <= 0:
        raise ValueError("k must be positive")
    return -float(k ** 3 * zetaK_neg1(D)) * bracket(D)


def faltings_height(D: int, m: int, k, boundary_disjoint: bool = True) -> float:
    """-2 k^2 vol(T(m)) (zeta'/zeta(-1) + 1/2 + sigma_m'/sigma_m(-1) / 2).

    The formula presumes T(m) is disjoint from the boundary; that is asserted by
    the caller through ``boundary_disjoint`` and not checked here.
    """
    if not boundary_disjoint:
        raise ValueError("the height formula needs T(m) disjoint from the boundary")
    if chi(D, m) == -1:
        raise ValueError(f"chi_{D}({m}) = -1: T(m) is empty")
    k = Fraction(k)
    if k <= 0:
        raise ValueError("k must be positive")
    sig = sigma_logderiv(D, m)
    return -2 * float(k ** 2 * vol_T(D, m)) * (zeta_logderiv_neg1().value + 0.5 + 0.5 * sig)


@dataclass(frozen=True)
class IntersectionSeries:
    D: int
    k: Fraction
    factor: float
    entries: dict

    @property
    def constant_term(self) -> float:
        return self.entries[0]


def intersection_series(D: int, k, m_max: int) -> IntersectionSeries:
    """m -> (k^2/2) zeta_K(-1) (bracket) C(m, 0) for 0 <= m <= m_max."""
    k = Fraction(k)
    factor = float(k ** 2 * zetaK_neg1(D) / 2) * bracket(D)
    E = plus_eisenstein(D, 2, m_max)
    entries = {m: factor * float(E[m]) for m in range(0, m_max + 1)}
    return IntersectionSeries(D, k, factor, entries)
