"""Plus-space forms for Gamma_0(D) with character chi_D."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arith import DirichletChar, chi, divisors, l_value_neg
from .series import QSeries

__all__ = [
    "ObstructionResult",
    "PlusForm",
    "PlusSpaceError",
    "UnknownCoefficient",
    "builtin_f1",
    "dim_plus_cusp",
    "dim_plus_holo",
    "obstruction_check",
    "pairing",
    "plus_eisenstein",
]


class PlusSpaceError(ValueError):
    pass


class UnknownCoefficient(KeyError):
    def __init__(self, n: int, lo: int, hi: int):
        self.index = n
        super().__init__(f"unknown coefficient: index {n} outside declared range [{lo}, {hi}]")

    def __str__(self):
        return self.args[0]


class PlusForm:
    """Coefficient table of a plus-space form over the index range [n_min, n_max].

    Indices below ``n_min`` are zero (it plays the role of the valuation);
    indices above ``n_max`` are unknown.
    """

    __slots__ = ("D", "weight", "n_min", "n_max", "_c")

    def __init__(self, D: int, weight, coeffs: Mapping[int, object], n_min: int | None = None,
                 n_max: int | None = None):
        DirichletChar(D)
        c = {int(n): Fraction(x) for n, x in coeffs.items()}
        c = {n: x for n, x in c.items() if x}
        if n_min is None:
            n_min = min(c, default=0)
        if n_max is None:
            n_max = max(c, default=n_min)
        if n_min > n_max:
            raise PlusSpaceError("empty coefficient range")
        for n, x in c.items():
            if not n_min <= n <= n_max:
                raise PlusSpaceError(f"coefficient at {n} outside declared range [{n_min}, {n_max}]")
            if chi(D, n) == -1:
                raise PlusSpaceError(f"plus-space condition violated: c({n}) = {x} but chi_{D}({n}) = -1")
        self.D = D
        self.weight = weight
        self.n_min = n_min
        self.n_max = n_max
        self._c = c

    def __getitem__(self, n: int) -> Fraction:
        if n < self.n_min:
            return Fraction(0)
        if n > self.n_max:
            raise UnknownCoefficient(n, self.n_min, self.n_max)
        return self._c.get(n, Fraction(0))

    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def principal_part(self) -> dict[int, Fraction]:
        return {n: x for n, x in self._c.items() if n < 0}

    def tilde(self, n: int) -> Fraction:
        return tilde(self, n)

    def __add__(self, other: "PlusForm") -> "PlusForm":
        if other.D != self.D or other.weight != self.weight:
            raise PlusSpaceError("can only add forms of the same level and weight")
        lo, hi = min(self.n_min, other.n_min), min(self.n_max, other.n_max)
        keys = {n for n in (*self._c, *other._c) if lo <= n <= hi}
        return PlusForm(self.D, self.weight, {n: self[n] + other[n] for n in keys}, lo, hi)

    def scale(self, k) -> "PlusForm":
        k = Fraction(k)
        return PlusForm(self.D, self.weight, {n: k * x for n, x in self._c.items()}, self.n_min, self.n_max)

    def __eq__(self, other):
        if not isinstance(other, PlusForm):
            return NotImplemented
        return (self.D, self.weight, self.n_min, self.n_max, self._c) == (
            other.D, other.weight, other.n_min, other.n_max, other._c)

    def __repr__(self):
        return f"PlusForm(D={self.D}, weight={self.weight}, range=[{self.n_min}, {self.n_max}])"


def tilde(form: PlusForm, n: int) -> Fraction:
    """c(n), doubled when D | n. Strict: indices outside the range raise."""
    if not form.n_min <= n <= form.n_max:
        raise UnknownCoefficient(n, form.n_min, form.n_max)
    c = form[n]
    return 2 * c if n % form.D == 0 else c


def plus_eisenstein(D: int, k: int, n_max: int) -> PlusForm:
    """Coefficients C(n, 0), 0 <= n <= n_max, of the weight-k plus-space Eisenstein series."""
    if k < 2 or k % 2:
        raise ValueError("k must be even and >= 2")
    L = l_value_neg(D, k)
    factor = Fraction(2) / L
    coeffs = {0: Fraction(1)}
    for n in range(1, n_max + 1):
        s = 0
        for d in divisors(n):
            s += d ** (k - 1) * (chi(D, d) + chi(D, n // d))
        if s:
            coeffs[n] = factor * s
    return PlusForm(D, k, coeffs, 0, n_max)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def pairing(f: PlusForm, g: PlusForm, precision: int) -> QSeries:
    """Level-1 series sum_n (sum_m c~(m) b(Dn - m)) q^n to O(q^precision)."""
    if f.D != g.D:
        raise PlusSpaceError("pairing needs forms of the same D")
    D = f.D
    v = _ceil_div(f.n_min + g.n_min, D)
    limit = min(f.n_max + g.n_min, g.n_max + f.n_min)
    for n in range(v, precision):
        if D * n > limit:
            raise PlusSpaceError(
                f"coefficient {n} of the pairing is undeterminable: needs input indices up to "
                f"{D * n - min(f.n_min, g.n_min)}"
            )
    coeffs = []
    f_items = sorted((m, tilde(f, m)) for m in f.coeffs())
    for n in range(v, max(precision, v)):
        s = Fraction(0)
        for m, cm in f_items:
            r = D * n - m
            if r < g.n_min:
                continue
            s += cm * g[r]
        coeffs.append(s)
    if precision < v:
        return QSeries.zero(precision, precision)
    return QSeries(coeffs, v, precision)


@dataclass(frozen=True)
class ObstructionResult:
    admissible: bool
    witness: int | None = None
    value: Fraction | None = None

    def to_json(self) -> dict:
        out = {"admissible": self.admissible}
        if not self.admissible:
            out["witness"] = self.witness
            out["value"] = str(self.value)
        return out


def obstruction_check(D: int, principal_part: Mapping[int, object],
                      cusp_basis: Sequence[PlusForm] = ()) -> ObstructionResult:
    """Is sum_{n<0} c~(n) b(-n) = 0 for every supplied weight-2 cusp form?

    The witness is the position of the first violating basis element.
    """
    DirichletChar(D)
    pp = {}
    for n, x in principal_part.items():
        x = Fraction(x)
        if n >= 0:
            raise PlusSpaceError(f"principal part index {n} is not negative")
        if x and chi(D, n) == -1:
            raise PlusSpaceError(f"principal part violates the plus-space condition at {n}")
        if x:
            pp[n] = 2 * x if n % D == 0 else x
    for i, g in enumerate(cusp_basis):
        if g.D != D:
            raise PlusSpaceError(f"cusp form {i} has D={g.D}, expected {D}")
        if any(n <= 0 for n in g.coeffs()):
            raise PlusSpaceError(f"cusp form {i} is not cuspidal")
        value = sum((c * g[-n] for n, c in pp.items()), Fraction(0))
        if value:
            return ObstructionResult(False, i, value)
    return ObstructionResult(True)


def dim_plus_cusp(D: int) -> int:
    DirichletChar(D)
    return (D - 5) // 24


def dim_plus_holo(D: int) -> int:
    return dim_plus_cusp(D) + 1


_F1 = {-1: 1, 0: 5, 1: 11, 4: -54, 5: 55, 6: 44, 9: -395, 10: 340, 11: 296, 14: -1836}


def builtin_f1() -> PlusForm:
    """The weight-0 plus-space form for D=5 with principal part q^-1, through q^14."""
    return PlusForm(5, 0, _F1, -1, 14)


def forms_from_tables(tables: Iterable, D: int, weight) -> list[PlusForm]:
    out = []
    for t in tables:
        lo, hi = t.index_range()
        out.append(PlusForm(D, weight, t.coeffs, lo, hi))
    return out
