"""Arithmetic in K = Q(sqrt D) in half-integer coordinates.

``QuadElem(D, u, v)`` is (u + v sqrt D)/2. ``InvDiffElem(D, u, v)`` is
nu = (u + v sqrt D)/(2 sqrt D) = (v + u/sqrt D)/2, an element of the inverse
different; it needs u = v (mod 2). Its trace is v and D nu nu' = (D v^2 - u^2)/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import DirichletChar

__all__ = [
    "ChamberSpec",
    "InvDiffElem",
    "QuadElem",
    "enumerate_invdiff",
    "epsilon0",
    "gundlach_chamber",
    "gundlach_rho",
    "negative_trace_elements",
]


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class QuadElem:
    D: int
    u: Fraction
    v: Fraction

    def __post_init__(self):
        object.__setattr__(self, "u", _q(self.u))
        object.__setattr__(self, "v", _q(self.v))

    def _check(self, other: "QuadElem"):
        if not isinstance(other, QuadElem) or other.D != self.D:
            raise TypeError("elements of different fields")

    def conj(self) -> "QuadElem":
        return QuadElem(self.D, self.u, -self.v)

    def trace(self) -> Fraction:
        return self.u

    def norm(self) -> Fraction:
        return (self.u * self.u - self.D * self.v * self.v) / 4

    def __add__(self, other: "QuadElem") -> "QuadElem":
        self._check(other)
        return QuadElem(self.D, self.u + other.u, self.v + other.v)

    def __sub__(self, other: "QuadElem") -> "QuadElem":
        self._check(other)
        return QuadElem(self.D, self.u - other.u, self.v - other.v)

    def __neg__(self) -> "QuadElem":
        return QuadElem(self.D, -self.u, -self.v)

    def __mul__(self, other) -> "QuadElem":
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.D, self.u * other, self.v * other)
        self._check(other)
        u = (self.u * other.u + self.D * self.v * other.v) / 2
        v = (self.u * other.v + self.v * other.u) / 2
        return QuadElem(self.D, u, v)

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.conj() * (1 / n)

    def is_totally_positive(self) -> bool:
        return self.u > 0 and self.norm() > 0

    def is_integral(self) -> bool:
        return (self.u.denominator == 1 and self.v.denominator == 1
                and (self.u.numerator - self.v.numerator) % 2 == 0)

    def embeddings(self) -> tuple[float, float]:
        u, w = float(self.u) / 2, float(self.v) * math.sqrt(self.D) / 2
        return u + w, u - w

    @staticmethod
    def sqrt_d(D: int) -> "QuadElem":
        return QuadElem(D, 0, 2)


@dataclass(frozen=True, order=True)
class InvDiffElem:
    D: int
    u: int
    v: int

    def __post_init__(self):
        if (self.u - self.v) % 2:
            raise ValueError(f"({self.u}, {self.v}) is not in the inverse different: u and v differ in parity")

    def trace(self) -> int:
        return self.v

    def scaled_norm(self) -> Fraction:
        """D nu nu'."""
        return Fraction(self.D * self.v * self.v - self.u * self.u, 4)

    def conj(self) -> "InvDiffElem":
        return InvDiffElem(self.D, -self.u, self.v)

    def __add__(self, other: "InvDiffElem") -> "InvDiffElem":
        return InvDiffElem(self.D, self.u + other.u, self.v + other.v)

    def __sub__(self, other: "InvDiffElem") -> "InvDiffElem":
        return InvDiffElem(self.D, self.u - other.u, self.v - other.v)

    def as_quad(self) -> QuadElem:
        return QuadElem(self.D, self.v, Fraction(self.u, self.D))

    @classmethod
    def from_quad(cls, x: QuadElem) -> "InvDiffElem":
        u = x.v * x.D
        v = x.u
        if u.denominator != 1 or v.denominator != 1:
            raise ValueError(f"{x} is not in the inverse different")
        return cls(x.D, int(u), int(v))

    def embeddings(self) -> tuple[float, float]:
        s = self.u / math.sqrt(self.D)
        return (self.v + s) / 2, (self.v - s) / 2

    def is_totally_positive(self) -> bool:
        return self.v > 0 and self.u * self.u < self.D * self.v * self.v


def epsilon0(D: int) -> QuadElem:
    """Fundamental unit (u + v sqrt D)/2 > 1 with the smallest v."""
    DirichletChar(D)
    # smallest v > 0 with u^2 - D v^2 = +-4
    v = 1
    while True:
        for sgn in (-4, 4):
            t = D * v * v + sgn
            if t > 0:
                u = math.isqrt(t)
                if u * u == t:
                    return QuadElem(D, u, v)
        v += 1


@dataclass(frozen=True)
class ChamberSpec:
    """nu is chamber-positive iff trace(w' nu) > 0."""

    D: int
    w: QuadElem

    def __post_init__(self):
        if self.w.D != self.D:
            raise ValueError("chamber element lives in a different field")
        if self.w.u == 0 and self.w.v == 0:
            raise ValueError("chamber element must be nonzero")

    def functional(self, u: int, v: int) -> Fraction:
        # trace(w' nu) = (a v - b u)/2 for w = (a + b sqrt D)/2
        return (self.w.u * v - self.w.v * u) / 2

    def is_positive(self, nu: InvDiffElem) -> bool:
        return self.functional(nu.u, nu.v) > 0


def gundlach_chamber() -> ChamberSpec:
    """D=5 chamber: eps0 nu' - eps0' nu > 0, i.e. 5v - u > 0."""
    return ChamberSpec(5, QuadElem.sqrt_d(5) * epsilon0(5))


def gundlach_rho() -> InvDiffElem:
    """Weyl vector eps0/sqrt 5 for the D=5 chamber."""
    return InvDiffElem.from_quad(epsilon0(5) * QuadElem.sqrt_d(5).inverse())


def _scan(D: int, chamber: ChamberSpec, vs, norm_min: Fraction) -> list[InvDiffElem]:
    out = []
    for v in vs:
        # u^2 <= D v^2 - 4 norm_min
        bound = D * v * v - 4 * norm_min
        if bound < 0:
            continue
        umax = math.isqrt(math.floor(bound))
        for u in range(-umax, umax + 1):
            if (u - v) % 2:
                continue
            if Fraction(D * v * v - u * u, 4) < norm_min:
                continue
            if chamber.functional(u, v) > 0:
                out.append(InvDiffElem(D, u, v))
    return out


def negative_trace_elements(D: int, chamber: ChamberSpec, norm_min) -> list[InvDiffElem]:
    """Chamber-positive nu with trace < 0 and D nu nu' >= norm_min.

    For totally positive w such nu has embeddings nu1 > 0 > nu2 with
    w2 nu1 > w1 |nu2| and nu1 |nu2| <= |norm_min|/D, so |v| <= |nu2| is bounded
    and a finite scan is exhaustive.
    """
    if not chamber.w.is_totally_positive():
        raise ValueError("trace grading needs a totally positive chamber element")
    norm_min = _q(norm_min)
    if norm_min >= 0:
        return []
    e1, e2 = chamber.w.embeddings()
    ratio = max(e1 / e2, e2 / e1)
    vmax = math.isqrt(math.ceil(4 * ratio * float(-norm_min) / D)) + 2
    return _scan(D, chamber, range(-vmax, 0), norm_min)


def enumerate_invdiff(D: int, chamber: ChamberSpec, trace_max: int, norm_min) -> list[InvDiffElem]:
    """Chamber-positive nu with 0 <= trace <= trace_max and D nu nu' >= norm_min,
    ordered by (trace, u).

    Raises if the chamber also admits such nu of negative trace, since the trace
    grading would then drop factors.
    """
    if chamber.D != D:
        raise ValueError("chamber belongs to a different D")
    norm_min = _q(norm_min)
    bad = negative_trace_elements(D, chamber, norm_min)
    if bad:
        raise ValueError(f"chamber admits nu of negative trace, e.g. (u={bad[0].u}, v={bad[0].v})")
    return _scan(D, chamber, range(0, trace_max + 1), norm_min)
