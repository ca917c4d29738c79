"""Exact and numerical tools for Borcherds products, Green functions and
heights on Hilbert modular surfaces of real quadratic fields of prime discriminant."""

from .classical import partition, verify_identity
from .green import GreenParams, green_integral, green_phi, vol_T, vol_YK
from .heights import faltings_height, intersection_series, self_intersection
from .hilbert import borcherds_expand, evaluate
from .plus_space import PlusForm, obstruction_check, pairing, plus_eisenstein
from .series import BiSeries, QSeries

__version__ = "0.1.0"

__all__ = [
    "BiSeries",
    "GreenParams",
    "PlusForm",
    "QSeries",
    "borcherds_expand",
    "evaluate",
    "faltings_height",
    "green_integral",
    "green_phi",
    "intersection_series",
    "obstruction_check",
    "pairing",
    "partition",
    "plus_eisenstein",
    "self_intersection",
    "verify_identity",
    "vol_T",
    "vol_YK",
]
