"""Groebner bases, syzygies, resolutions and Hilbert functions."""
from __future__ import annotations

from .engine import DegreeBoundExceeded, GroebnerEngine, TermOrder, s_pairs_reduce_to_zero
from .hilbert import HilbertFn
from .ideal import (Ideal, colon, colon_poly, dim_deg, exact_divide, groebner_basis, hilbert_function,
                    intersect, irrelevant_ideal, normal_form, power_of_ideal, saturate)
from .syzygy import BettiTable, GradedMap, Resolution, kernel, minimal_free_resolution, syzygies

__all__ = [
    "BettiTable", "DegreeBoundExceeded", "GradedMap", "GroebnerEngine", "HilbertFn", "Ideal",
    "Resolution", "TermOrder", "colon", "colon_poly", "dim_deg", "exact_divide", "groebner_basis",
    "hilbert_function", "intersect", "irrelevant_ideal", "kernel", "minimal_free_resolution",
    "normal_form", "power_of_ideal", "s_pairs_reduce_to_zero", "saturate", "syzygies",
]
