from .homology import (
    ZSqrt,
    exact_moments,
    homoenum_closed_form_check,
    homology_gf,
    total_exponent_gf,
)
from .model import FreeRank, build_gr
from .words import brute_force_cyclic_words, count_cyclically_reduced

__all__ = [
    "FreeRank",
    "ZSqrt",
    "brute_force_cyclic_words",
    "build_gr",
    "count_cyclically_reduced",
    "exact_moments",
    "homoenum_closed_form_check",
    "homology_gf",
    "total_exponent_gf",
]
