"""zeta and L(s, chi_D) at s = -1 with derivatives, each by two routes.

Route "functional-equation" moves to s = 2 where the Dirichlet series converge
absolutely, then reflects. Route "hurwitz-series" applies Euler-Maclaurin to the
Hurwitz zeta function directly at s = -1. A shipped value carries both results
and refuses to exist if they disagree beyond their combined error.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from ._config import analytic_dps
from .arith import DirichletChar, bernoulli, chi, l_value_neg, zeta_neg1

__all__ = [
    "LValue",
    "LValueDisagreement",
    "dirichlet_l_deriv_neg1",
    "dirichlet_l_neg1",
    "hurwitz_em",
    "l_logderiv_neg1",
    "zeta_deriv_neg1",
    "zeta_logderiv_neg1",
    "zeta_value_neg1",
    "zetaK_logderiv_neg1",
]

TARGET = 1e-10
METHODS = ("functional-equation", "hurwitz-series")


class LValueDisagreement(ArithmeticError):
    pass


@dataclass(frozen=True)
class LValue:
    label: str
    value: float
    abs_error_estimate: float
    method: str
    check_value: float
    check_method: str
    agreement: float

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "value": self.value,
            "abs_error_estimate": self.abs_error_estimate,
            "method": self.method,
            "check_method": self.check_method,
            "method_agreement": self.agreement,
        }


# ---------------------------------------------------------------------------
# Euler-Maclaurin for the Hurwitz zeta function
# ---------------------------------------------------------------------------

def _rising(s, j):
    """(s)_j and its s-derivative."""
    val = mpf(1)
    der = mpf(0)
    for i in range(j):
        der = der * (s + i) + val
        val = val * (s + i)
    return val, der


def hurwitz_em(s, a, n_terms: int = 30, order: int = 14):
    """zeta_H(s, a) and d/ds zeta_H(s, a) for real s != 1, with a remainder bound.

    Returns (value, derivative, bound). The explicit part sums n_terms terms,
    then Euler-Maclaurin with ``order`` Bernoulli corrections from x0 = a + n_terms.
    """
    s = mpf(s)
    a = mpf(a)
    val = mpf(0)
    der = mpf(0)
    for n in range(n_terms):
        x = n + a
        t = x ** (-s)
        val += t
        der -= mpmath.log(x) * t
    x0 = a + n_terms
    lx = mpmath.log(x0)
    t = x0 ** (1 - s) / (s - 1)
    val += t
    der += -lx * t - x0 ** (1 - s) / (s - 1) ** 2
    t = x0 ** (-s) / 2
    val += t
    der -= lx * t
    for k in range(1, order + 1):
        j = 2 * k - 1
        c = mpf(bernoulli(2 * k).numerator) / bernoulli(2 * k).denominator / mpmath.factorial(2 * k)
        r, dr = _rising(s, j)
        p = x0 ** (-s - j)
        val += c * r * p
        der += c * (dr * p - lx * r * p)
    # remainder: |(s)_{2K}| |B_{2K}|/(2K)! x0^{1-s-2K}/(s+2K-1), plus the derivative analogue
    K = 2 * order
    bK = abs(mpf(bernoulli(K).numerator) / bernoulli(K).denominator) / mpmath.factorial(K)
    r, dr = _rising(s, K)
    expo = s + K - 1
    base = bK * x0 ** (-expo) / expo
    bound = abs(r) * base + (abs(dr) + abs(r) * (lx + 1 / expo)) * base
    return val, der, bound


# ---------------------------------------------------------------------------
# Cached computations
# ---------------------------------------------------------------------------

_CACHE: dict = {}
_LOCK = threading.Lock()


def _cached(key, fn):
    with _LOCK:
        if key not in _CACHE:
            _CACHE[key] = fn()
        return _CACHE[key]


def _floor_eps(dps: int) -> mpf:
    return mpf(10) ** (-(dps - 5))


def _zeta_routes(dps: int):
    with mp.workdps(dps):
        # functional equation: zeta'/zeta(-1) = log(2 pi) - psi(2) - zeta'/zeta(2)
        z2, dz2, e2 = hurwitz_em(2, 1)
        val_a = -z2 / (2 * mp.pi ** 2)
        logd_a = mpmath.log(2 * mp.pi) - mpmath.digamma(2) - dz2 / z2
        der_a = val_a * logd_a
        err_a = e2 * (1 + abs(der_a) / z2)
        # direct Euler-Maclaurin at s = -1
        zb, dzb, eb = hurwitz_em(-1, 1)
        return (val_a, der_a, err_a), (zb, dzb, eb)


def _l_routes(D: int, dps: int):
    char = DirichletChar(D)
    with mp.workdps(dps):
        Dm = mpf(D)
        # L(2), L'(2): explicit sum over n <= N D plus Hurwitz tails per residue class
        N = 12
        L2 = mpf(0)
        dL2 = mpf(0)
        for n in range(1, N * D + 1):
            c = chi(char, n)
            if c:
                t = mpf(n) ** -2
                L2 += c * t
                dL2 -= c * mpmath.log(n) * t
        err2 = mpf(0)
        for a in range(1, D):
            c = chi(char, a)
            if not c:
                continue
            h, dh, e = hurwitz_em(2, N + mpf(a) / D, n_terms=0)
            # sum_{n >= N} (nD + a)^{-s} = D^{-s} zeta_H(s, N + a/D)
            L2 += c * h / Dm ** 2
            dL2 += c * (dh - mpmath.log(Dm) * h) / Dm ** 2
            err2 += e / Dm ** 2 * (1 + mpmath.log(Dm))
        # Lambda(s) = (D/pi)^{s/2} Gamma(s/2) L(s) = Lambda(1 - s)
        val_a = (Dm / mp.pi) ** mpf(1.5) * L2 / mpmath.gamma(mpf(-0.5))
        logd_a = (-mpmath.log(Dm / mp.pi) - mpmath.digamma(mpf(-0.5)) / 2
                  - mpmath.digamma(1) / 2 - dL2 / L2)
        der_a = val_a * logd_a
        err_a = err2 * (Dm / mp.pi) ** mpf(1.5) / abs(mpmath.gamma(mpf(-0.5))) * (1 + abs(logd_a) + 1 / L2)
        # L(s) = D^{-s} sum_a chi(a) zeta_H(s, a/D) at s = -1
        Hb = mpf(0)
        dHb = mpf(0)
        err_b = mpf(0)
        for a in range(1, D):
            c = chi(char, a)
            if not c:
                continue
            h, dh, e = hurwitz_em(-1, mpf(a) / D)
            Hb += c * h
            dHb += c * dh
            err_b += e
        val_b = Dm * Hb
        der_b = Dm * (dHb - mpmath.log(Dm) * Hb)
        err_b = Dm * err_b * (1 + mpmath.log(Dm))
        return (val_a, der_a, err_a), (val_b, der_b, err_b)


def _make(label: str, a, b, ea, eb, dps: int) -> LValue:
    agreement = abs(a - b)
    combined = ea + eb + _floor_eps(dps)
    if agreement > combined:
        raise LValueDisagreement(
            f"{label}: routes disagree by {mpmath.nstr(agreement, 5)} > combined error {mpmath.nstr(combined, 5)}"
        )
    est = max(ea, agreement, _floor_eps(dps))
    if est > TARGET:
        raise LValueDisagreement(f"{label}: error estimate {mpmath.nstr(est, 5)} above target {TARGET}")
    return LValue(label, float(a), float(est), METHODS[0], float(b), METHODS[1], float(agreement))


def _zeta_values(dps: int):
    def build():
        (va, da, ea), (vb, db, eb) = _zeta_routes(dps)
        return (_make("zeta(-1)", va, vb, ea, eb, dps), _make("zeta'(-1)", da, db, ea, eb, dps))

    return _cached(("zeta", dps), build)


def _l_values(D: int, dps: int):
    def build():
        (va, da, ea), (vb, db, eb) = _l_routes(D, dps)
        return (_make(f"L(-1,chi_{D})", va, vb, ea, eb, dps),
                _make(f"L'(-1,chi_{D})", da, db, ea, eb, dps))

    return _cached(("L", D, dps), build)


# ---------------------------------------------------------------------------
# Public accessors
# ---------------------------------------------------------------------------

def zeta_value_neg1(dps: int | None = None) -> LValue:
    return _zeta_values(dps or analytic_dps())[0]


def zeta_deriv_neg1(dps: int | None = None) -> LValue:
    return _zeta_values(dps or analytic_dps())[1]


def dirichlet_l_neg1(D: int, dps: int | None = None) -> LValue:
    return _l_values(D, dps or analytic_dps())[0]


def dirichlet_l_deriv_neg1(D: int, dps: int | None = None) -> LValue:
    return _l_values(D, dps or analytic_dps())[1]


def _ratio(label: str, num: LValue, den_exact: Fraction) -> LValue:
    d = float(den_exact)
    return LValue(label, num.value / d, num.abs_error_estimate / abs(d), num.method,
                  num.check_value / d, num.check_method, num.agreement / abs(d))


def zeta_logderiv_neg1(dps: int | None = None) -> LValue:
    """zeta'(-1)/zeta(-1), dividing by the exact zeta(-1) = -1/12."""
    return _ratio("zeta'/zeta(-1)", zeta_deriv_neg1(dps), zeta_neg1())


def l_logderiv_neg1(D: int, dps: int | None = None) -> LValue:
    return _ratio(f"L'/L(-1,chi_{D})", dirichlet_l_deriv_neg1(D, dps), l_value_neg(D, 2))


def zetaK_logderiv_neg1(D: int, dps: int | None = None) -> LValue:
    """zeta_K'/zeta_K(-1) = zeta'/zeta(-1) + L'/L(-1, chi_D) for zeta_K = zeta L(., chi_D)."""
    z = zeta_logderiv_neg1(dps)
    lv = l_logderiv_neg1(D, dps)
    return LValue(
        f"zeta_K'/zeta_K(-1), D={D}",
        z.value + lv.value,
        z.abs_error_estimate + lv.abs_error_estimate,
        z.method,
        z.check_value + lv.check_value,
        z.check_method,
        abs((z.value + lv.value) - (z.check_value + lv.check_value)),
    )
