"""Environment switches read once at import time."""

from __future__ import annotations

import os

PRECISION_ENV = "BORCHERDS_LAB_PRECISION"
DISABLE_NUMBA_ENV = "BORCHERDS_LAB_DISABLE_NUMBA"
DEFAULT_DPS = 30


def analytic_dps() -> int:
    """Decimal digits for the mpmath L-value machinery."""
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return DEFAULT_DPS
    try:
        dps = int(raw)
    except ValueError:
        raise ValueError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if dps < 20:
        raise ValueError(f"{PRECISION_ENV} below 20 digits cannot meet the 1e-10 target")
    return dps


def numba_disabled() -> bool:
    return os.environ.get(DISABLE_NUMBA_ENV, "").strip().lower() not in ("", "0", "false", "no")
