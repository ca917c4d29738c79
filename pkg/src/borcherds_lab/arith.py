"""Exact arithmetic: Bernoulli numbers, the quadratic character chi_D and
L(1-k, chi_D) via generalized Bernoulli numbers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt
from typing import Iterator

__all__ = [
    "DirichletChar",
    "bernoulli",
    "bernoulli_poly",
    "chi",
    "divisors",
    "generalized_bernoulli",
    "is_prime",
    "l_value_neg",
    "parse_rational",
    "zeta_neg1",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for p in range(3, isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


@dataclass(frozen=True)
class DirichletChar:
    """The character chi_D = (D/.) of Q(sqrt D) for a prime D = 1 mod 4."""

    D: int

    def __post_init__(self):
        if not isinstance(self.D, int) or self.D % 4 != 1 or not is_prime(self.D):
            raise ValueError(f"D must be a prime congruent to 1 mod 4, got {self.D!r}")

    def __call__(self, n: int) -> int:
        return chi(self, n)

    def values(self) -> Iterator[int]:
        """chi(1), ..., chi(D)."""
        for a in range(1, self.D + 1):
            yield chi(self, a)


def _as_char(char: DirichletChar | int) -> DirichletChar:
    return char if isinstance(char, DirichletChar) else DirichletChar(char)


def chi(char: DirichletChar | int, n: int) -> int:
    """Legendre symbol (n | D); 0 iff D divides n."""
    D = _as_char(char).D
    r = n % D
    if r == 0:
        return 0
    return 1 if pow(r, (D - 1) // 2, D) == 1 else -1


@lru_cache(maxsize=None)
def _bernoulli_table(k: int) -> tuple[Fraction, ...]:
    # sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1, which fixes B_1 = -1/2
    B = [Fraction(1)]
    for n in range(1, k + 1):
        if n > 1 and n % 2 == 1:
            B.append(Fraction(0))
            continue
        s = sum(comb(n + 1, j) * B[j] for j in range(n))
        B.append(-s / (n + 1))
    return tuple(B)


def bernoulli(k: int) -> Fraction:
    """B_k with B_1 = -1/2, so that E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return _bernoulli_table(k)[k]


def bernoulli_poly(k: int, x: Fraction | int) -> Fraction:
    x = Fraction(x)
    return sum((comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))


def generalized_bernoulli(char: DirichletChar | int, k: int) -> Fraction:
    """B_{k,chi} = D^{k-1} sum_{a=1}^{D} chi(a) B_k(a/D)."""
    c = _as_char(char)
    D = c.D
    total = sum(
        (chi(c, a) * bernoulli_poly(k, Fraction(a, D)) for a in range(1, D)),
        Fraction(0),
    )
    return D ** (k - 1) * total


@lru_cache(maxsize=None)
def _l_value_neg(D: int, k: int) -> Fraction:
    return -generalized_bernoulli(D, k) / k


def l_value_neg(char: DirichletChar | int, k: int) -> Fraction:
    """Exact L(1-k, chi_D) for even k >= 2."""
    if k < 2 or k % 2:
        raise ValueError("chi_D is even; only even k >= 2 give non-zero L(1-k, chi_D)")
    return _l_value_neg(_as_char(char).D, k)


def zeta_neg1() -> Fraction:
    """zeta(-1) = -B_2/2."""
    return -bernoulli(2) / 2


def divisors(n: int) -> list[int]:
    if n <= 0:
        raise ValueError("divisors() needs a positive integer")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def parse_rational(text: str) -> Fraction:
    """Parse 'p' or 'p/q' exactly; rejects floats."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        d = int(den)
        if d <= 0:
            raise ValueError(f"denominator must be positive: {text!r}")
        return Fraction(int(num), d)
    return Fraction(int(text))


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
