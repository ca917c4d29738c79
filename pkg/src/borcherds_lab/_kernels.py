"""Floating-point hot loops with a numba path and a pure numpy path.

numba is used when importable unless BORCHERDS_LAB_DISABLE_NUMBA is set. Both
paths return the same points in the same order; the final ordering and the
reductions happen in shared numpy code so the backends stay interchangeable.
"""

from __future__ import annotations

import math

import numpy as np

from ._config import numba_disabled

try:  # pragma: no cover - depends on the environment
    if numba_disabled():
        raise ImportError("disabled by environment")
    import os

    import numba
    from numba import njit, prange

    if "NUMBA_THREADING_LAYER" not in os.environ:
        # skip the TBB probe; it warns on older system TBB builds
        numba.config.THREADING_LAYER = "omp"

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "enumerate_lattice_arrays",
    "hilbert_terms_sum",
    "set_threads",
]


def set_threads(n: int | None) -> None:
    if n is None or not HAVE_NUMBA:
        return
    n = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)


# ---------------------------------------------------------------------------
# Lattice enumeration for the Green function sum
# ---------------------------------------------------------------------------

def _linear_forms(D: int, z1: complex, z2: complex) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient vectors of w and w~ in the variables (a, b, v, u)."""
    r = 2.0 * math.sqrt(D)
    w = np.array([z1 * z2, 1.0, (z1 + z2) / 2.0, (z1 - z2) / r], dtype=complex)
    z2c = z2.conjugate()
    wt = np.array([z1 * z2c, 1.0, (z1 + z2c) / 2.0, (z1 - z2c) / r], dtype=complex)
    return w, wt


def _fincke_pohst_form(D: int, z1: complex, z2: complex) -> np.ndarray:
    """Cholesky-style coefficients of the majorant projected to (v, b, a).

    |w|^2 + |w~|^2 is positive definite on (a, b, v, u); minimizing out u gives
    the form on (a, b, v) whose sublevel sets contain every candidate.
    """
    gram = np.zeros((4, 4))
    for c in _linear_forms(D, z1, z2):
        gram += np.outer(c.real, c.real) + np.outer(c.imag, c.imag)
    inv = np.linalg.inv(gram)
    # order x = (v, b, a); x2 = a is the outermost loop
    idx = [2, 1, 0]
    proj = np.linalg.inv(inv[np.ix_(idx, idx)])
    q = proj.copy()
    n = 3
    for i in range(n):
        for j in range(i + 1, n):
            q[j, i] = q[i, j]
            q[i, j] = q[i, j] / q[i, i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k, l] -= q[k, i] * q[i, l]
    return q


def _majorant_bound(D: int, m: int, y1: float, y2: float, R: float) -> float:
    # |w|^2 <= (R - 1) * 2 y1 y2 m / D and |w~|^2 = |w|^2 + 4 y1 y2 m / D
    t = 2.0 * y1 * y2 * m / D
    return 2.0 * (R - 1.0) * t + 2.0 * t


_SLACK = 1e-9


def _enumerate_numpy(q, B, D, m, z1, z2, R):
    y1, y2 = z1.imag, z2.imag
    scale = D / (2.0 * y1 * y2 * m)
    amax = int(math.floor(math.sqrt(B / q[2, 2]) * (1 + _SLACK))) + 1
    sq = math.sqrt(D)
    out_a, out_b, out_u, out_v, out_arg, out_w2 = [], [], [], [], [], []
    for a in range(-amax, amax + 1):
        rem1 = B * (1 + _SLACK) - q[2, 2] * a * a
        if rem1 < 0:
            continue
        c1 = -q[1, 2] * a
        h1 = math.sqrt(rem1 / q[1, 1])
        bs = np.arange(math.ceil(c1 - h1) - 1, math.floor(c1 + h1) + 2, dtype=np.int64)
        rem0 = rem1 - q[1, 1] * (bs + q[1, 2] * a) ** 2
        keep = rem0 >= 0
        bs, rem0 = bs[keep], rem0[keep]
        if not len(bs):
            continue
        c0 = -(q[0, 1] * bs + q[0, 2] * a)
        h0 = np.sqrt(rem0 / q[0, 0])
        lo = np.ceil(c0 - h0).astype(np.int64) - 1
        hi = np.floor(c0 + h0).astype(np.int64) + 1
        counts = hi - lo + 1
        total = int(counts.sum())
        if total <= 0:
            continue
        bb = np.repeat(bs, counts)
        starts = np.repeat(lo - np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
        vv = starts + np.arange(total, dtype=np.int64)
        t = 4 * m + D * vv * vv - 4 * D * a * bb
        ok = t >= 0
        bb, vv, t = bb[ok], vv[ok], t[ok]
        r = np.floor(np.sqrt(t.astype(np.float64))).astype(np.int64)
        r = np.where(r * r > t, r - 1, r)
        r = np.where((r + 1) * (r + 1) <= t, r + 1, r)
        ok = (r * r == t) & ((r - vv) % 2 == 0)
        bb, vv, r = bb[ok], vv[ok], r[ok]
        for sign in (1, -1):
            if sign == -1:
                nz = r != 0
                bb_s, vv_s, uu = bb[nz], vv[nz], -r[nz]
            else:
                bb_s, vv_s, uu = bb, vv, r
            if not len(uu):
                continue
            lam = vv_s * ((z1 + z2) / 2.0) + uu * ((z1 - z2) / (2.0 * sq))
            w = (a * (z1 * z2) + bb_s) + lam
            w2 = w.real * w.real + w.imag * w.imag
            arg = 1.0 + w2 * scale
            keep = arg <= R
            n_keep = int(keep.sum())
            if n_keep:
                out_a.append(np.full(n_keep, a, dtype=np.int64))
                out_b.append(bb_s[keep])
                out_u.append(uu[keep])
                out_v.append(vv_s[keep])
                out_arg.append(arg[keep])
                out_w2.append(w2[keep])
    if not out_a:
        e = np.zeros(0, dtype=np.int64)
        return e, e, e, e, np.zeros(0), np.zeros(0)
    return (np.concatenate(out_a), np.concatenate(out_b), np.concatenate(out_u),
            np.concatenate(out_v), np.concatenate(out_arg), np.concatenate(out_w2))


if HAVE_NUMBA:

    @njit(cache=True)
    def _isqrt_nb(t):
        r = np.int64(math.sqrt(np.float64(t)))
        while r * r > t:
            r -= 1
        while (r + 1) * (r + 1) <= t:
            r += 1
        return r

    @njit(cache=True)
    def _scan_slice(a, q, B, D, m, z1, z2, R, fill, a_out, b_out, u_out, v_out, arg_out, w2_out, start):
        y1 = z1.imag
        y2 = z2.imag
        scale = D / (2.0 * y1 * y2 * m)
        sq = math.sqrt(D)
        zz = z1 * z2
        zs = (z1 + z2) / 2.0
        zd = (z1 - z2) / (2.0 * sq)
        count = 0
        rem1 = B * (1 + 1e-9) - q[2, 2] * a * a
        if rem1 < 0:
            return 0
        c1 = -q[1, 2] * a
        h1 = math.sqrt(rem1 / q[1, 1])
        for b in range(int(math.ceil(c1 - h1)) - 1, int(math.floor(c1 + h1)) + 2):
            rem0 = rem1 - q[1, 1] * (b + q[1, 2] * a) ** 2
            if rem0 < 0:
                continue
            c0 = -(q[0, 1] * b + q[0, 2] * a)
            h0 = math.sqrt(rem0 / q[0, 0])
            for v in range(int(math.ceil(c0 - h0)) - 1, int(math.floor(c0 + h0)) + 2):
                t = 4 * m + D * v * v - 4 * D * a * b
                if t < 0:
                    continue
                r = _isqrt_nb(t)
                if r * r != t or (r - v) % 2 != 0:
                    continue
                for sign in (1, -1):
                    if sign == -1 and r == 0:
                        continue
                    u = sign * r
                    lam = v * zs + u * zd
                    w = (a * zz + b) + lam
                    w2 = w.real * w.real + w.imag * w.imag
                    arg = 1.0 + w2 * scale
                    if arg <= R:
                        if fill:
                            k = start + count
                            a_out[k] = a
                            b_out[k] = b
                            u_out[k] = u
                            v_out[k] = v
                            arg_out[k] = arg
                            w2_out[k] = w2
                        count += 1
        return count

    @njit(parallel=True, cache=True)
    def _enumerate_nb(q, B, D, m, z1, z2, R):
        amax = int(math.floor(math.sqrt(B / q[2, 2]) * (1 + 1e-9))) + 1
        n_a = 2 * amax + 1
        counts = np.zeros(n_a, dtype=np.int64)
        dummy_i = np.zeros(0, dtype=np.int64)
        dummy_f = np.zeros(0)
        # pass 1: sizes per outer slice, pass 2: fill at fixed offsets
        for i in prange(n_a):
            counts[i] = _scan_slice(i - amax, q, B, D, m, z1, z2, R, False,
                                    dummy_i, dummy_i, dummy_i, dummy_i, dummy_f, dummy_f, 0)
        offsets = np.zeros(n_a + 1, dtype=np.int64)
        for i in range(n_a):
            offsets[i + 1] = offsets[i] + counts[i]
        total = offsets[n_a]
        a_out = np.empty(total, dtype=np.int64)
        b_out = np.empty(total, dtype=np.int64)
        u_out = np.empty(total, dtype=np.int64)
        v_out = np.empty(total, dtype=np.int64)
        arg_out = np.empty(total)
        w2_out = np.empty(total)
        for i in prange(n_a):
            _scan_slice(i - amax, q, B, D, m, z1, z2, R, True,
                        a_out, b_out, u_out, v_out, arg_out, w2_out, offsets[i])
        return a_out, b_out, u_out, v_out, arg_out, w2_out


def enumerate_lattice_arrays(D: int, m: int, z1: complex, z2: complex, R: float, backend: str | None = None):
    """All (a, b, u, v) with u^2 - D v^2 + 4 D a b = 4m, u = v (mod 2) and
    summand argument <= R, sorted by (arg, a, b, u, v).

    Returns arrays a, b, u, v, arg, |w|^2.
    """
    z1, z2 = complex(z1), complex(z2)
    if R < 1:
        raise ValueError("argument cutoff must be >= 1")
    backend = backend or BACKEND
    q = _fincke_pohst_form(D, z1, z2)
    B = _majorant_bound(D, m, z1.imag, z2.imag, R)
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable")
        res = _enumerate_nb(q, float(B), int(D), int(m), z1, z2, float(R))
    elif backend == "numpy":
        res = _enumerate_numpy(q, B, D, m, z1, z2, R)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    a, b, u, v, arg, w2 = res
    order = np.lexsort((v, u, b, a, arg))
    return a[order], b[order], u[order], v[order], arg[order], w2[order]


# ---------------------------------------------------------------------------
# Hilbert Fourier sums
# ---------------------------------------------------------------------------

def _hilbert_numpy(nu1, nu2, coeff, z1, z2, compensated):
    phase = np.exp(2j * np.pi * (nu1 * z1 + nu2 * z2))
    terms = coeff * phase
    s = 0j
    c = 0j
    for t in terms.tolist():
        if compensated:
            # Neumaier, on real and imaginary parts
            sr, si = s.real + t.real, s.imag + t.imag
            cr = c.real + ((s.real - sr) + t.real if abs(s.real) >= abs(t.real) else (t.real - sr) + s.real)
            ci = c.imag + ((s.imag - si) + t.imag if abs(s.imag) >= abs(t.imag) else (t.imag - si) + s.imag)
            s, c = complex(sr, si), complex(cr, ci)
        else:
            s += t
    return s + c


if HAVE_NUMBA:

    @njit(cache=True)
    def _hilbert_nb(nu1, nu2, coeff, z1, z2, compensated):
        sr = 0.0
        si = 0.0
        cr = 0.0
        ci = 0.0
        for k in range(nu1.shape[0]):
            t = coeff[k] * np.exp(2j * np.pi * (nu1[k] * z1 + nu2[k] * z2))
            if compensated:
                x = sr + t.real
                if abs(sr) >= abs(t.real):
                    cr += (sr - x) + t.real
                else:
                    cr += (t.real - x) + sr
                sr = x
                y = si + t.imag
                if abs(si) >= abs(t.imag):
                    ci += (si - y) + t.imag
                else:
                    ci += (t.imag - y) + si
                si = y
            else:
                sr += t.real
                si += t.imag
        return complex(sr + cr, si + ci)


def hilbert_terms_sum(nu1: np.ndarray, nu2: np.ndarray, coeff: np.ndarray, z1: complex, z2: complex,
                      compensated: bool = False, backend: str | None = None) -> complex:
    """sum_k coeff[k] exp(2 pi i (nu1[k] z1 + nu2[k] z2)) in array order."""
    backend = backend or BACKEND
    nu1 = np.ascontiguousarray(nu1, dtype=np.float64)
    nu2 = np.ascontiguousarray(nu2, dtype=np.float64)
    coeff = np.ascontiguousarray(coeff, dtype=np.float64)
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return complex(_hilbert_nb(nu1, nu2, coeff, complex(z1), complex(z2), bool(compensated)))
    if backend == "numpy":
        return _hilbert_numpy(nu1, nu2, coeff, complex(z1), complex(z2), compensated)
    raise ValueError(f"unknown backend {backend!r}")
