"""Coefficient tables: one ``n  num[/den]`` entry per line, ``#`` comments.

Unlisted indices inside the declared range are zero. Optional metadata lives in
header comments of the form ``# key: value`` (D, weight, n_min, n_max).
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, TextIO

__all__ = ["CoeffFileError", "CoeffTable", "dumps", "format_rational", "loads", "read_table", "write_table"]

_META_KEYS = ("D", "weight", "n_min", "n_max")


class CoeffFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


@dataclass
class CoeffTable:
    coeffs: dict[int, Fraction]
    meta: dict[str, int | Fraction] = field(default_factory=dict)

    def index_range(self) -> tuple[int, int]:
        lo = self.meta.get("n_min", min(self.coeffs, default=0))
        hi = self.meta.get("n_max", max(self.coeffs, default=0))
        return int(lo), int(hi)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_value(tok: str, lineno: int, source: str | None) -> Fraction:
    try:
        if "/" in tok:
            num, den = tok.split("/", 1)
            d = int(den)
            if d <= 0:
                raise CoeffFileError(f"non-positive denominator in {tok!r}", lineno, source)
            return Fraction(int(num), d)
        return Fraction(int(tok))
    except ValueError as exc:
        if isinstance(exc, CoeffFileError):
            raise
        raise CoeffFileError(f"cannot parse coefficient {tok!r}", lineno, source) from None


def read_table(fh: TextIO, source: str | None = None) -> CoeffTable:
    coeffs: dict[int, Fraction] = {}
    meta: dict = {}
    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, _, val = body.partition(":")
                key = key.strip()
                if key in _META_KEYS:
                    val = val.strip()
                    if key == "weight":
                        meta[key] = _parse_value(val, lineno, source)
                        if meta[key].denominator == 1:
                            meta[key] = int(meta[key])
                    else:
                        try:
                            meta[key] = int(val)
                        except ValueError:
                            raise CoeffFileError(f"bad integer for {key}: {val!r}", lineno, source) from None
            continue
        line = line.split("#", 1)[0]
        parts = line.split()
        if len(parts) != 2:
            raise CoeffFileError(f"expected 'n value', got {raw.rstrip()!r}", lineno, source)
        try:
            n = int(parts[0])
        except ValueError:
            raise CoeffFileError(f"bad index {parts[0]!r}", lineno, source) from None
        if n in coeffs:
            raise CoeffFileError(f"duplicate index {n}", lineno, source)
        coeffs[n] = _parse_value(parts[1], lineno, source)
    if "n_min" in meta and "n_max" in meta and meta["n_min"] > meta["n_max"]:
        raise CoeffFileError("n_min exceeds n_max", None, source)
    for n in coeffs:
        if ("n_min" in meta and n < meta["n_min"]) or ("n_max" in meta and n > meta["n_max"]):
            raise CoeffFileError(f"index {n} outside the declared range", None, source)
    return CoeffTable(coeffs, meta)


def write_table(fh: TextIO, coeffs: Mapping[int, Fraction], meta: Mapping | None = None,
                keep_zeros: bool = False) -> None:
    for key in _META_KEYS:
        if meta and key in meta:
            val = meta[key]
            fh.write(f"# {key}: {format_rational(val) if isinstance(val, Fraction) else val}\n")
    for n in sorted(coeffs):
        c = coeffs[n]
        if c or keep_zeros:
            fh.write(f"{n} {format_rational(c)}\n")


def loads(text: str, source: str | None = None) -> CoeffTable:
    return read_table(io.StringIO(text), source)


def dumps(coeffs: Mapping[int, Fraction], meta: Mapping | None = None, keep_zeros: bool = False) -> str:
    buf = io.StringIO()
    write_table(buf, coeffs, meta, keep_zeros)
    return buf.getvalue()


def load_path(path: str | os.PathLike) -> CoeffTable:
    try:
        with open(path, encoding="utf-8") as fh:
            return read_table(fh, str(path))
    except OSError as exc:
        raise CoeffFileError(f"cannot read coefficient file: {exc.strerror}", None, str(path)) from None
