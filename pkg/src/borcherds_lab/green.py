"""Legendre functions of the second kind, the Green function lattice sum
Phi_m(z1, z2, s), volumes of Y_K and T(m), and the closed-form Green integral."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate, special

from . import _kernels
from .arith import DirichletChar, chi, divisors, l_value_neg, zeta_neg1
from .lvalues import l_logderiv_neg1, zeta_logderiv_neg1
from .plus_space import plus_eisenstein
from .quadfield import InvDiffElem

__all__ = [
    "DivisorProximityError",
    "GreenParams",
    "GreenResult",
    "LatticePoint",
    "TailToleranceError",
    "enumerate_lattice",
    "green_integral",
    "green_phi",
    "green_phi_fixed",
    "gundlach_integral",
    "hyperbolic_laplacian_fd",
    "legendre_q",
    "legendre_q_array",
    "legendre_q_hyp",
    "sigma_logderiv",
    "sigma_m",
    "vol_T",
    "vol_YK",
]


class DivisorProximityError(ValueError):
    pass


class TailToleranceError(ArithmeticError):
    def __init__(self, message: str, tail: float, cutoff: float, n_points: int):
        super().__init__(message)
        self.tail = tail
        self.cutoff = cutoff
        self.n_points = n_points


# ---------------------------------------------------------------------------
# Legendre Q
# ---------------------------------------------------------------------------

def legendre_q(s: float, z: float) -> float:
    """Q_{s-1}(z) = int_0^inf (z + sqrt(z^2-1) cosh u)^(-s) du by adaptive quadrature."""
    if not z > 1:
        raise ValueError(f"Legendre Q needs z > 1, got {z}")
    if not s > 0:
        raise ValueError(f"Legendre Q needs s > 0, got {s}")
    z = float(z)
    s = float(s)
    r = math.sqrt((z - 1) * (z + 1))
    # integrand < (r e^u / 2)^(-s); cut where the remaining tail is below 1e-17 of Q
    u_knee = math.acosh(max(z / r, 1.0)) if r > 0 else 0.0
    head = (z + r) ** (-s)
    u_max = max(u_knee, 0.0) + 2.0
    while (2.0 / r) ** s * math.exp(-s * u_max) / s > 1e-17 * head:
        u_max += 2.0

    def f(u):
        return (z + r * math.cosh(u)) ** (-s)

    total = 0.0
    edges = [0.0]
    if 0.0 < u_knee < u_max:
        edges.append(u_knee)
    edges.append(u_max)
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(f, lo, hi, epsabs=0.0, epsrel=1e-13, limit=400)
        total += val
    return total


def legendre_q_hyp(s, z):
    """Q_{s-1}(z) via sqrt(pi) Gamma(s)/Gamma(s+1/2) xi^s 2F1(1/2, s; s+1/2; xi^2),
    xi = z - sqrt(z^2 - 1). Vectorized over z."""
    z = np.asarray(z, dtype=np.float64)
    if np.any(z <= 1):
        raise ValueError("Legendre Q needs z > 1")
    r = np.sqrt((z - 1) * (z + 1))
    xi = 1.0 / (z + r)
    c = math.sqrt(math.pi) * math.exp(math.lgamma(s) - math.lgamma(s + 0.5))
    return c * xi ** s * special.hyp2f1(0.5, s, s + 0.5, xi * xi)


def _q_closed(s: float, z: np.ndarray) -> np.ndarray | None:
    """Closed forms for s = 1, 2 (the common cases), else None."""
    if s == 1.0:
        return 0.5 * np.log1p(2.0 / (z - 1))
    if s == 2.0:
        return 0.5 * z * np.log1p(2.0 / (z - 1)) - 1.0
    return None


def legendre_q_array(s: float, z) -> np.ndarray:
    """Vectorized Q_{s-1} used inside the lattice sum."""
    z = np.asarray(z, dtype=np.float64)
    out = _q_closed(float(s), z)
    if out is not None:
        # the s = 2 closed form cancels badly for large z; use the series there
        if s == 2.0:
            big = z > 50
            if np.any(big):
                out = out.copy()
                out[big] = legendre_q_hyp(s, z[big])
        return out
    return legendre_q_hyp(s, z)


# ---------------------------------------------------------------------------
# Lattice and Green function
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticePoint:
    a: int
    b: int
    lam: InvDiffElem

    def check(self, m: int) -> bool:
        D = self.lam.D
        return Fraction(self.a * self.b) - Fraction(D * self.lam.v ** 2 - self.lam.u ** 2, 4 * D) == Fraction(m, D)


def enumerate_lattice(D: int, m: int, z1: complex, z2: complex, bound: float,
                      backend: str | None = None) -> list[LatticePoint]:
    """(a, b, lambda) with ab - lambda lambda' = m/D and summand argument <= bound."""
    DirichletChar(D)
    if m < 1:
        raise ValueError("m must be positive")
    if chi(D, m) == -1:
        return []
    a, b, u, v, _, _ = _kernels.enumerate_lattice_arrays(D, m, z1, z2, bound, backend)
    return [LatticePoint(int(x), int(y), InvDiffElem(D, int(p), int(q)))
            for x, y, p, q in zip(a.tolist(), b.tolist(), u.tolist(), v.tolist())]


@dataclass(frozen=True)
class GreenParams:
    """``bound`` is the starting cutoff R on the summand argument; ``eps`` the tail target."""

    D: int
    m: int
    s: float
    bound: float = 200.0
    eps: float | None = None
    max_points: int = 400_000
    proximity: float = 1e-8

    def __post_init__(self):
        DirichletChar(self.D)
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if chi(self.D, self.m) == -1:
            raise ValueError(f"chi_{self.D}({self.m}) = -1: T(m) is empty")
        if not self.s > 1:
            raise ValueError("only s > 1 is implemented")
        if self.bound <= 1:
            raise ValueError("bound must exceed 1")
        if self.eps is not None and not self.eps > 0:
            raise ValueError("eps must be positive")


@dataclass(frozen=True)
class GreenResult:
    value: float
    tail_estimate: float
    cutoff: float
    n_points: int
    min_w2: float

    def to_json(self) -> dict:
        return {"value": self.value, "tail_estimate": self.tail_estimate, "cutoff": self.cutoff,
                "n_points": self.n_points}


def _tail_estimate(s: float, n_points: int, R: float) -> float:
    # point density kappa = N(R)/R and Q_{s-1}(X) ~ c_s (2X)^{-s}
    if n_points == 0:
        return 0.0
    kappa = n_points / R
    c_s = math.sqrt(math.pi) * math.exp(math.lgamma(s) - math.lgamma(s + 0.5))
    return kappa * c_s * 2.0 ** (-s) * R ** (1 - s) / (s - 1)


def _check_points(z1: complex, z2: complex):
    z1, z2 = complex(z1), complex(z2)
    if z1.imag <= 0 or z2.imag <= 0:
        raise ValueError("points must lie in the upper half plane")
    return z1, z2


def _sum_terms(s: float, arg: np.ndarray) -> float:
    return math.fsum(legendre_q_array(s, arg).tolist())


def green_phi(params: GreenParams, z1: complex, z2: complex, backend: str | None = None) -> GreenResult:
    """Phi_m(z1, z2, s) summed over points by increasing argument.

    The cutoff doubles from ``params.bound`` until the tail estimate meets
    ``params.eps`` or the point budget is exhausted (TailToleranceError).
    """
    z1, z2 = _check_points(z1, z2)
    D, m, s = params.D, params.m, float(params.s)
    R = float(params.bound)
    while True:
        a, b, u, v, arg, w2 = _kernels.enumerate_lattice_arrays(D, m, z1, z2, R, backend)
        n = len(arg)
        tail = _tail_estimate(s, n, R)
        if params.eps is None or tail <= params.eps:
            break
        if 2 * n > params.max_points:
            raise TailToleranceError(
                f"tail estimate {tail:.3g} exceeds eps={params.eps:g} at cutoff {R:g} "
                f"({n} points); the point budget {params.max_points} does not allow a larger cutoff",
                tail, R, n)
        R *= 2.0
    min_w2 = float(w2.min()) if n else math.inf
    y1y2 = z1.imag * z2.imag
    if min_w2 < params.proximity * y1y2:
        raise DivisorProximityError(
            f"(z1, z2) lies within the proximity threshold of T({m}): min |w|^2 = {min_w2:.3g}")
    return GreenResult(_sum_terms(s, arg), tail, R, n, min_w2)


def green_phi_fixed(D: int, m: int, s: float, points, z1: complex, z2: complex) -> float:
    """Partial sum over a fixed set of lattice points (a, b, u, v) arrays."""
    z1, z2 = _check_points(z1, z2)
    a, b, u, v = (np.asarray(x, dtype=np.float64) for x in points)
    sq = math.sqrt(D)
    lam = v * ((z1 + z2) / 2.0) + u * ((z1 - z2) / (2.0 * sq))
    w = (a * (z1 * z2) + b) + lam
    arg = 1.0 + (w.real ** 2 + w.imag ** 2) * D / (2.0 * z1.imag * z2.imag * m)
    order = np.argsort(arg, kind="stable")
    return _sum_terms(float(s), arg[order])


def hyperbolic_laplacian_fd(fn, z: complex, h: float = 1e-3) -> float:
    """y^2 (f_xx + f_yy) at z by the 5-point stencil."""
    f0 = fn(z)
    fxx = (fn(z + h) - 2 * f0 + fn(z - h)) / h ** 2
    fyy = (fn(z + 1j * h) - 2 * f0 + fn(z - 1j * h)) / h ** 2
    return z.imag ** 2 * (fxx + fyy)


# ---------------------------------------------------------------------------
# Volumes and Green integrals
# ---------------------------------------------------------------------------

def vol_YK(D: int) -> Fraction:
    """zeta_K(-1) = zeta(-1) L(-1, chi_D)."""
    return zeta_neg1() * l_value_neg(D, 2)


def vol_T(D: int, m: int) -> Fraction:
    """-C(m, 0) vol(Y_K)/2 from the weight-2 plus-space Eisenstein series."""
    if m < 1:
        raise ValueError("m must be >= 1")
    C = plus_eisenstein(D, 2, m)[m]
    return -C * vol_YK(D) / 2


def _sigma_terms(D: int, m: int):
    return [(d, chi(D, d) + chi(D, m // d)) for d in divisors(m)]


def sigma_m(D: int, m: int, s: float) -> float:
    """m^{(1-s)/2} sum_{d | m} d^s (chi(d) + chi(m/d))."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return m ** ((1 - s) / 2) * math.fsum(c * d ** s for d, c in _sigma_terms(D, m) if c)


def sigma_logderiv(D: int, m: int) -> float:
    """sigma_m'(-1)/sigma_m(-1) from term-by-term differentiation."""
    terms = [(d, c) for d, c in _sigma_terms(D, m) if c]
    den = sum(Fraction(c, d) for d, c in terms)
    if den == 0:
        raise ZeroDivisionError(f"sigma_{m}(-1) = 0 for D={D}; the log-derivative is undefined")
    num = math.fsum(c * math.log(d) / d for d, c in terms)
    return -0.5 * math.log(m) + num / float(den)


def green_integral(D: int, m: int) -> float:
    """int G_m Omega^2 = -vol(T(m)) (L'/L(-1) + 1/2 - sigma_m'/sigma_m(-1) + log(D)/2)."""
    if chi(D, m) == -1:
        raise ValueError(f"chi_{D}({m}) = -1: T(m) is empty")
    sig = sigma_logderiv(D, m)
    return -float(vol_T(D, m)) * (l_logderiv_neg1(D).value + 0.5 - sig + 0.5 * math.log(D))


def gundlach_integral(D: int = 5) -> float:
    """-zeta(-1) (2 L'/L(-1) + 1 + log D), using the Hurwitz-route L'/L."""
    lv = l_logderiv_neg1(D).check_value
    return -float(zeta_neg1()) * (2 * lv + 1 + math.log(D))
