"""Integer polynomial kernels used by the exact series ring.

Coefficient lists are plain Python ints (arbitrary precision). Dense products
switch from schoolbook to Kronecker substitution once both operands are long
enough, letting CPython's Karatsuba bigint multiply do the convolution.
"""

from __future__ import annotations

from math import gcd

KRONECKER_THRESHOLD = 24


def _max_bits(a: list[int]) -> int:
    return max((abs(x).bit_length() for x in a), default=0)


def schoolbook(a: list[int], b: list[int], n: int) -> list[int]:
    """First n coefficients of a*b."""
    out = [0] * n
    nz_b = [(j, y) for j, y in enumerate(b[:n]) if y]
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        lim = n - i
        for j, y in nz_b:
            if j >= lim:
                break
            out[i + j] += x * y
    return out


def _pack(a: list[int], nbytes: int) -> int:
    """Pack non-negative ints (each < 256**nbytes) little-endian."""
    return int.from_bytes(b"".join(x.to_bytes(nbytes, "little") for x in a), "little")


def kronecker(a: list[int], b: list[int], n: int) -> list[int]:
    """First n coefficients of a*b via a single bigint product."""
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return [0] * n
    bound_bits = _max_bits(a) + _max_bits(b) + min(len(a), len(b)).bit_length() + 2
    nbytes = (bound_bits + 7) // 8
    shift = 8 * nbytes

    def split(v):
        pos = [x if x > 0 else 0 for x in v]
        neg = [-x if x < 0 else 0 for x in v]
        return _pack(pos, nbytes), _pack(neg, nbytes)

    ap, an = split(a)
    bp, bn = split(b)
    prod = ap * bp + an * bn - ap * bn - an * bp
    # shift every digit into [0, 2**shift) before unpacking
    m = len(a) + len(b) - 1
    half = 1 << (shift - 1)
    offset = _pack([half] * m, nbytes)
    raw = (prod + offset).to_bytes(m * nbytes, "little")
    out = [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(min(m, n))
    ]
    out.extend([0] * (n - len(out)))
    return out


def mul(a: list[int], b: list[int], n: int) -> list[int]:
    la = sum(1 for x in a[:n] if x)
    lb = sum(1 for x in b[:n] if x)
    if min(la, lb) < KRONECKER_THRESHOLD:
        return schoolbook(a, b, n)
    return kronecker(a, b, n)


def inverse_unit(a: list[int], n: int) -> list[int]:
    """Inverse of an integer series with a[0] == +-1, to n terms."""
    a0 = a[0]
    if a0 not in (1, -1):
        raise ValueError("inverse_unit needs a unit constant term")
    nz = [(k, x) for k, x in enumerate(a[:n]) if x and k]
    dense = len(nz) > 2 * KRONECKER_THRESHOLD
    if dense and n > 4 * KRONECKER_THRESHOLD:
        # Newton: g <- g*(2 - a*g), doubling the known length
        g = [a0]
        m = 1
        while m < n:
            m = min(2 * m, n)
            e = mul(a, g, m)
            e = [-x for x in e]
            e[0] += 2
            g = mul(g, e, m)
        return g
    b = [0] * n
    b[0] = a0
    for i in range(1, n):
        s = 0
        for k, x in nz:
            if k > i:
                break
            s += x * b[i - k]
        b[i] = -s * a0
    return b


def content(a: list[int]) -> int:
    g = 0
    for x in a:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    return g
