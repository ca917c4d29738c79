"""Truncated Laurent series with exact rational coefficients.

``QSeries`` stores the dense window ``[valuation, precision)``; everything at or
beyond ``precision`` is unknown. ``BiSeries`` is the sparse bivariate analogue
in (q1, q2) with a per-row window on the q2 exponent.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

from . import _intpoly
from .arith import lcm

__all__ = [
    "BiSeries",
    "QSeries",
    "SeriesError",
    "WindowError",
    "binomial_coefficient",
    "graded_product",
    "product_with_exponents",
]

Number = Union[int, Fraction]


class SeriesError(ArithmeticError):
    pass


class WindowError(SeriesError, KeyError):
    """A coefficient outside the declared window was requested or produced."""

    def __str__(self):
        return str(self.args[0]) if self.args else "window overflow"


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact coefficient expected, got {type(x).__name__}")


def _to_ints(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = lcm(den, c.denominator)
    if den == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _from_ints(nums: Iterable[int], den: int) -> tuple[Fraction, ...]:
    if den == 1:
        return tuple(Fraction(x) for x in nums)
    return tuple(Fraction(x, den) for x in nums)


def binomial_coefficient(e: int, k: int) -> int:
    """Generalized binomial C(e, k) for any integer e and k >= 0."""
    if e >= 0:
        return comb(e, k) if k <= e else 0
    # C(-n, k) = (-1)^k C(n+k-1, k)
    return (-1) ** k * comb(-e + k - 1, k)


class QSeries:
    """f = sum_{n=v}^{P-1} c(n) q^n + O(q^P)."""

    __slots__ = ("_v", "_c", "_p", "_ints")

    def __init__(self, coeffs: Iterable = (), valuation: int = 0, precision: int | None = None):
        c = tuple(_frac(x) for x in coeffs)
        if precision is None:
            precision = valuation + len(c)
        if precision < valuation:
            raise ValueError("precision below valuation")
        n = precision - valuation
        if len(c) > n:
            if any(c[n:]):
                raise WindowError(f"coefficients given beyond precision {precision}")
            c = c[:n]
        elif len(c) < n:
            c = c + (Fraction(0),) * (n - len(c))
        self._v = valuation
        self._c = c
        self._p = precision
        self._ints = None

    # -- construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...], valuation: int, precision: int) -> "QSeries":
        obj = cls.__new__(cls)
        obj._v, obj._c, obj._p, obj._ints = valuation, coeffs, precision, None
        return obj

    @classmethod
    def _from_int_vector(cls, nums: list[int], den: int, valuation: int, precision: int) -> "QSeries":
        g = _intpoly.content(nums)
        if den != 1 and g:
            from math import gcd

            g = gcd(g, den)
            if g > 1:
                nums = [x // g for x in nums]
                den //= g
        obj = cls._raw(_from_ints(nums, den), valuation, precision)
        obj._ints = (nums, den)
        return obj

    @classmethod
    def from_dict(cls, d: Mapping[int, Number], precision: int, valuation: int | None = None) -> "QSeries":
        if valuation is None:
            valuation = min(d, default=0)
            valuation = min(valuation, precision)
        c = [Fraction(0)] * (precision - valuation)
        for n, x in d.items():
            if n < valuation:
                raise WindowError(f"index {n} below valuation {valuation}")
            if n >= precision:
                raise WindowError(f"index {n} at or beyond precision {precision}")
            c[n - valuation] = _frac(x)
        return cls._raw(tuple(c), valuation, precision)

    @classmethod
    def one(cls, precision: int) -> "QSeries":
        return cls.monomial(0, precision)

    @classmethod
    def zero(cls, precision: int, valuation: int = 0) -> "QSeries":
        return cls((), valuation, precision)

    @classmethod
    def monomial(cls, n: int, precision: int, coeff: Number = 1) -> "QSeries":
        if n >= precision:
            return cls.zero(precision, min(n, precision))
        return cls([coeff], n, precision)

    # -- accessors ------------------------------------------------------------
    @property
    def valuation(self) -> int:
        return self._v

    @property
    def precision(self) -> int:
        return self._p

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def _int_form(self) -> tuple[list[int], int]:
        if self._ints is None:
            self._ints = _to_ints(self._c)
        return self._ints

    def __getitem__(self, n: int) -> Fraction:
        if n >= self._p:
            raise WindowError(f"coefficient of q^{n} is beyond precision O(q^{self._p})")
        if n < self._v:
            return Fraction(0)
        return self._c[n - self._v]

    def items(self):
        for i, c in enumerate(self._c):
            yield self._v + i, c

    def to_dict(self, nonzero: bool = True) -> dict[int, Fraction]:
        return {n: c for n, c in self.items() if c or not nonzero}

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._c)

    def leading(self) -> tuple[int, Fraction]:
        for n, c in self.items():
            if c:
                return n, c
        raise SeriesError("series is zero to its precision")

    def normalized(self) -> "QSeries":
        """Same series with leading zeros stripped from the window."""
        for i, c in enumerate(self._c):
            if c:
                return QSeries._raw(self._c[i:], self._v + i, self._p)
        return QSeries._raw((), self._p, self._p)

    def truncate(self, precision: int) -> "QSeries":
        if precision > self._p:
            raise WindowError(f"cannot extend precision from {self._p} to {precision}")
        if precision <= self._v:
            return QSeries._raw((), precision, precision)
        return QSeries._raw(self._c[: precision - self._v], self._v, precision)

    # -- ring operations ------------------------------------------------------
    def _coerce(self, other) -> "QSeries | None":
        if isinstance(other, QSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return QSeries([other], 0, max(self._p, 1))
        return None

    def __neg__(self) -> "QSeries":
        return QSeries._raw(tuple(-c for c in self._c), self._v, self._p)

    def __add__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            if 0 >= self._p:
                return self
            v = min(self._v, 0)
            c = list(self._c) if v == self._v else [Fraction(0)] * (self._v - v) + list(self._c)
            c[-v] += other
            return QSeries._raw(tuple(c), v, self._p)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = min(self._p, other._p)
        v = min(self._v, other._v, p)
        c = [self[n] + other[n] if n < p else Fraction(0) for n in range(v, p)]
        return QSeries._raw(tuple(c), v, p)

    __radd__ = __add__

    def __sub__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def scale(self, k: Number) -> "QSeries":
        k = _frac(k)
        return QSeries._raw(tuple(k * c for c in self._c), self._v, self._p)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        v = self._v + other._v
        p = min(self._p + other._v, other._p + self._v)
        n = p - v
        if n <= 0:
            return QSeries._raw((), p, p)
        a, da = self._int_form()
        b, db = other._int_form()
        return QSeries._from_int_vector(_intpoly.mul(a, b, n), da * db, v, p)

    __rmul__ = __mul__

    def shift(self, k: int) -> "QSeries":
        """Multiply by q^k."""
        return QSeries._raw(self._c, self._v + k, self._p + k)

    def invert(self) -> "QSeries":
        f = self.normalized()
        if f._v >= f._p:
            raise SeriesError("cannot invert a series that is zero to its precision")
        if self._c and not self._c[0]:
            raise SeriesError(
                f"leading coefficient at the valuation q^{self._v} is zero; call normalized() first"
            )
        v, p = f._v, f._p
        n = p - v  # relative precision
        nums, den = f._int_form()
        a0 = nums[0]
        if a0 in (1, -1):
            inv = _intpoly.inverse_unit(nums, n)
            # f = (nums/den) q^v  ->  1/f = den * inv * q^{-v}
            return QSeries._from_int_vector([den * x for x in inv], 1, -v, p - 2 * v)
        c = f._c
        b = [Fraction(0)] * n
        b[0] = 1 / c[0]
        nz = [(k, x) for k, x in enumerate(c) if x and k]
        for i in range(1, n):
            s = Fraction(0)
            for k, x in nz:
                if k > i:
                    break
                s += x * b[i - k]
            b[i] = -s * b[0]
        return QSeries._raw(tuple(b), -v, p - 2 * v)

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / _frac(other))
        if not isinstance(other, QSeries):
            return NotImplemented
        return self * other.invert()

    def __pow__(self, e: int) -> "QSeries":
        return self.int_pow(e)

    def int_pow(self, e: int) -> "QSeries":
        if not isinstance(e, int):
            raise TypeError("integer exponent required")
        if e < 0:
            return self.invert().int_pow(-e)
        if e == 0:
            return QSeries.one(self.normalized()._p - self.normalized()._v)
        base = self
        result = None
        while True:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if not e:
                break
            base = base * base
        return result

    # -- comparison / display -------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        if self._p != other._p:
            return False
        v = min(self._v, other._v)
        return all(self[n] == other[n] for n in range(v, self._p))

    def agrees_with(self, other: "QSeries", precision: int | None = None) -> bool:
        """Coefficient-wise equality up to the common (or given) precision."""
        p = min(self._p, other._p) if precision is None else precision
        if precision is not None and (precision > self._p or precision > other._p):
            raise WindowError("comparison beyond a known precision")
        v = min(self._v, other._v)
        return all(self[n] == other[n] for n in range(v, p))

    def __hash__(self):
        return hash((self.normalized()._v, self.normalized()._c, self._p))

    def __repr__(self) -> str:
        terms = []
        for n, c in self.items():
            if c:
                terms.append(f"{c}*q^{n}")
            if len(terms) >= 8:
                terms.append("...")
                break
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self._p}))"


# ---------------------------------------------------------------------------
# Bivariate series
# ---------------------------------------------------------------------------

Key = tuple[int, int]


class BiSeries:
    """Truncated Laurent series in q1, q2.

    Row ``e1`` (for ``v1 <= e1 < n1``) is known exactly for q2 exponents below
    ``hi[e1]`` and vanishes below ``lo[e1]``. Rows at or beyond ``n1`` are unknown.
    """

    __slots__ = ("coeffs", "v1", "n1", "lo", "hi")

    def __init__(self, coeffs: Mapping[Key, Number], v1: int, n1: int,
                 lo: Sequence[int] | int, hi: Sequence[int] | int):
        rows = n1 - v1
        if rows < 0:
            raise ValueError("empty q1 range")
        lo = [lo] * rows if isinstance(lo, int) else list(lo)
        hi = [hi] * rows if isinstance(hi, int) else list(hi)
        if len(lo) != rows or len(hi) != rows:
            raise ValueError("one window per q1 row required")
        if any(l > h for l, h in zip(lo, hi)):
            raise ValueError("window lower bound above upper bound")
        clean = {}
        for (e1, e2), c in coeffs.items():
            c = _frac(c)
            if not c:
                continue
            if not v1 <= e1 < n1 or not lo[e1 - v1] <= e2 < hi[e1 - v1]:
                raise WindowError(f"coefficient at q1^{e1} q2^{e2} lies outside the declared window")
            clean[(e1, e2)] = c
        self.coeffs = clean
        self.v1, self.n1 = v1, n1
        self.lo, self.hi = tuple(lo), tuple(hi)

    def window(self, e1: int) -> tuple[int, int]:
        if not self.v1 <= e1 < self.n1:
            raise WindowError(f"q1^{e1} outside [{self.v1}, {self.n1})")
        return self.lo[e1 - self.v1], self.hi[e1 - self.v1]

    def __getitem__(self, key: Key) -> Fraction:
        e1, e2 = key
        if e1 < self.v1:
            return Fraction(0)
        lo, hi = self.window(e1)
        if e2 >= hi:
            raise WindowError(f"coefficient q1^{e1} q2^{e2} beyond row window [{lo}, {hi})")
        return self.coeffs.get(key, Fraction(0))

    @classmethod
    def one(cls, n1: int, hi: int) -> "BiSeries":
        rows = n1
        return cls({(0, 0): 1} if n1 > 0 else {}, 0, n1, [0] * rows, [hi] * rows)

    def shift(self, d1: int, d2: int) -> "BiSeries":
        return BiSeries(
            {(a + d1, b + d2): c for (a, b), c in self.coeffs.items()},
            self.v1 + d1, self.n1 + d1,
            [x + d2 for x in self.lo], [x + d2 for x in self.hi],
        )

    def __neg__(self) -> "BiSeries":
        return BiSeries({k: -c for k, c in self.coeffs.items()}, self.v1, self.n1, self.lo, self.hi)

    def __add__(self, other: "BiSeries") -> "BiSeries":
        if not isinstance(other, BiSeries):
            return NotImplemented
        v1 = min(self.v1, other.v1)
        n1 = min(self.n1, other.n1)
        lo, hi = [], []
        for e1 in range(v1, n1):
            rows = [s.window(e1) for s in (self, other) if e1 >= s.v1]
            lo.append(min(r[0] for r in rows))
            hi.append(min(r[1] for r in rows))
        out: dict[Key, Fraction] = {}
        for s in (self, other):
            for (e1, e2), c in s.coeffs.items():
                if e1 < n1 and e2 < hi[e1 - v1]:
                    out[(e1, e2)] = out.get((e1, e2), Fraction(0)) + c
        return BiSeries(out, v1, n1, lo, hi)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        if not isinstance(other, BiSeries):
            return NotImplemented
        v1 = self.v1 + other.v1
        n1 = min(self.n1 + other.v1, other.n1 + self.v1)
        lo, hi = [], []
        for e1 in range(v1, max(n1, v1)):
            l = h = None
            for a1 in range(self.v1, self.n1):
                b1 = e1 - a1
                if not other.v1 <= b1 < other.n1:
                    continue
                la, ha = self.window(a1)
                lb, hb = other.window(b1)
                cand_lo = la + lb
                cand_hi = min(ha + lb, la + hb)
                l = cand_lo if l is None else min(l, cand_lo)
                h = cand_hi if h is None else min(h, cand_hi)
            lo.append(l)
            hi.append(max(h, l))
        out: dict[Key, Fraction] = {}
        for (a1, a2), x in self.coeffs.items():
            for (b1, b2), y in other.coeffs.items():
                e1 = a1 + b1
                if e1 >= n1:
                    continue
                e2 = a2 + b2
                if e2 >= hi[e1 - v1]:
                    continue
                key = (e1, e2)
                out[key] = out.get(key, Fraction(0)) + x * y
        return BiSeries(out, v1, n1, lo, hi)

    def window_agreement(self, other: "BiSeries", max_e2: int | None = None):
        """Yield (e1, e2, lhs, rhs) over the common window, row by row."""
        v1 = max(self.v1, other.v1)
        n1 = min(self.n1, other.n1)
        for e1 in range(v1, n1):
            l1, h1 = self.window(e1)
            l2, h2 = other.window(e1)
            lo, hi = min(l1, l2), min(h1, h2)
            if max_e2 is not None:
                hi = min(hi, max_e2)
            for e2 in range(lo, hi):
                yield e1, e2, self[(e1, e2)], other[(e1, e2)]

    def __repr__(self):
        return f"BiSeries({len(self.coeffs)} terms, q1 in [{self.v1},{self.n1}))"


# ---------------------------------------------------------------------------
# Products of binomials
# ---------------------------------------------------------------------------

def graded_product(factors: Iterable[tuple[tuple, int]], grade, max_grade: int,
                   add=None) -> dict:
    """Expand prod (1 - X^key)^e over a graded monoid, keeping grade <= max_grade.

    ``factors`` are ``(key, e)`` pairs where keys are tuples of ints combined
    component-wise; ``grade(key)`` must be additive. Grade-0 factors need a
    non-negative integer exponent (a finite binomial).
    """
    if add is None:
        def add(x, y):
            return tuple(i + j for i, j in zip(x, y))
    result: dict = {}
    zero_key = None
    for key, e in factors:
        if not isinstance(e, int):
            raise TypeError("exponents must be integers")
        if zero_key is None:
            zero_key = tuple(0 for _ in key)
            result = {zero_key: 1}
        if e == 0:
            continue
        g = grade(key)
        if g < 0:
            raise SeriesError(f"factor with negative grade {g} at {key}")
        if g == 0:
            if e < 0:
                raise SeriesError(
                    f"grade-0 factor (1 - X^{key}) has negative exponent {e}; it cannot be inverted "
                    "inside the graded truncation"
                )
            kmax = e
        else:
            kmax = max_grade // g
        terms = []
        power = zero_key
        for k in range(kmax + 1):
            c = binomial_coefficient(e, k)
            if k % 2:
                c = -c
            if c:
                terms.append((power, c))
            power = add(power, key)
        new: dict = {}
        for k1, c1 in result.items():
            g1 = grade(k1)
            for k2, c2 in terms:
                if g1 + grade(k2) > max_grade:
                    continue
                kk = add(k1, k2)
                new[kk] = new.get(kk, 0) + c1 * c2
        result = {k: c for k, c in new.items() if c}
    if zero_key is None:
        return {}
    return result


def _qseries_binomial_pow(n: int, coeff: Fraction, e: int, precision: int) -> QSeries:
    """(1 - coeff*q^n)^e to O(q^precision), n > 0."""
    c = [Fraction(0)] * precision
    k = 0
    x = Fraction(1)
    while k * n < precision:
        b = binomial_coefficient(e, k)
        if b:
            c[k * n] = b * x
        x *= -coeff
        k += 1
        if e >= 0 and k > e:
            break
    return QSeries(c, 0, precision)


def product_with_exponents(factors: Sequence[tuple], precision: int,
                           *, bivariate: bool = False, q2_precision: int | None = None):
    """Expand prod (1 - m)^e for monomials m to the requested precision.

    Univariate: each factor is ``(n, e)`` meaning (1 - q^n)^e, or
    ``((n, coeff), e)`` for (1 - coeff*q^n)^e. Precision is ``O(q^precision)``.

    Bivariate: each factor is ``((m1, m2), e)`` meaning (1 - q1^m1 q2^m2)^e with
    m1 > 0 (the q1-grading), or m1 == 0 with m2 > 0 and e >= 0. Rows are
    truncated at q1^precision and every row window is capped at ``q2_precision``.
    """
    if bivariate:
        return _biseries_product(factors, precision, q2_precision)
    result = QSeries.one(precision) if precision > 0 else QSeries.zero(precision)
    const = Fraction(1)
    dense: dict[int, list[int]] = {}
    for mono, e in factors:
        if isinstance(mono, tuple):
            n, coeff = mono
            coeff = _frac(coeff)
        else:
            n, coeff = mono, Fraction(1)
        if not isinstance(e, int):
            raise TypeError("exponents must be integers")
        if e == 0 or n >= precision:
            continue
        if n < 0:
            raise SeriesError(f"monomial q^{n} has negative grade")
        if n == 0:
            base = 1 - coeff
            if base == 0 and e < 0:
                raise SeriesError("negative exponent on a vanishing constant factor")
            const *= base ** e
            continue
        if coeff == 1:
            dense.setdefault(n, [0])[0] += e
            continue
        result = result * _qseries_binomial_pow(n, coeff, e, precision)
    if dense:
        result = result * _unit_binomials(dense, precision)
    return result.scale(const) if const != 1 else result


def _unit_binomials(exps: dict[int, list[int]], precision: int) -> QSeries:
    """prod (1 - q^n)^e by in-place multiplication/division on an int vector."""
    a = [0] * precision
    a[0] = 1
    for n in sorted(exps):
        e = exps[n][0]
        if e == 0:
            continue
        reps = abs(e)
        sparse_cost = precision * (precision // n + 1)
        if reps * precision <= sparse_cost:
            for _ in range(reps):
                if e > 0:
                    for i in range(precision - 1, n - 1, -1):
                        a[i] -= a[i - n]
                else:
                    for i in range(n, precision):
                        a[i] += a[i - n]
        else:
            b = [0] * precision
            for k in range(0, (precision - 1) // n + 1):
                b[k * n] = (-1) ** k * binomial_coefficient(e, k)
            a = _intpoly.mul(a, b, precision)
    return QSeries._from_int_vector(a, 1, 0, precision)


def _biseries_product(factors, precision: int, q2_precision: int | None) -> BiSeries:
    if q2_precision is None:
        raise ValueError("bivariate products need an explicit q2_precision window cap")
    cap = q2_precision
    rows = precision
    result = BiSeries.one(precision, cap)
    for (m1, m2), e in factors:
        if not isinstance(e, int):
            raise TypeError("exponents must be integers")
        if e == 0:
            continue
        if m1 < 0 or (m1 == 0 and m2 <= 0):
            raise SeriesError(f"factor q1^{m1} q2^{m2} is not of positive grade")
        if m1 == 0 and e < 0:
            raise SeriesError("grade-0 factor with negative exponent")
        if m1 >= precision:
            continue
        terms = {}
        kmax = e if (m1 == 0) else (precision - 1) // m1
        if e > 0:
            kmax = min(kmax, e)
        lo = [cap] * rows
        for k in range(kmax + 1):
            key = (k * m1, k * m2)
            if key[0] >= precision:
                break
            c = binomial_coefficient(e, k) * (-1) ** k
            if c and key[1] < cap:
                terms[key] = c
                lo[key[0]] = min(lo[key[0]], key[1])
        factor = BiSeries(terms, 0, precision, lo, [cap] * rows)
        result = result * factor
    return result
