"""Exact F_q point counts for exchange-equation varieties on trees and forests.

A forest T with an invertible coefficient alpha_t per vertex defines the
affine variety with one equation per vertex:

    x_t * x'_t = 1 + alpha_t * prod over neighbors s of x_s

The package counts its points over finite fields three independent ways
(brute-force enumeration, leaf-removal recursion, closed-form formulas for
the Dynkin families A/D/E), normalizes coefficients by domino-tiling flips,
locates singular points, and recovers count polynomials in q by exact
interpolation.
"""

from .coeffs import (CoeffMap, LeafSplit, NormalForm, ScaledSlotCoeffs, flip,
                     leaf_removal_transforms, normalize)
from .counting import (CountReport, EXTENSION_AVAILABLE, FibrationReport,
                       PointRecord, VarietyInstance, brute_count,
                       brute_points, check_z_fibration, count_Y, count_Z,
                       normal_form_instance)
from .forests import (DominoTiling, Forest, bipartite_color, canonical_form,
                      dynkin, dynkin_tiling, e_long_branch_end, leafy_tiling,
                      normal_form_slots, white_leaf)
from .gf import Field, FieldElement, field_from_order, field_make

__version__ = "0.1.0"

__all__ = [
    "CoeffMap", "CountReport", "DominoTiling", "EXTENSION_AVAILABLE",
    "FibrationReport", "Field", "FieldElement", "Forest", "LeafSplit",
    "NormalForm", "PointRecord", "ScaledSlotCoeffs", "VarietyInstance",
    "bipartite_color", "brute_count", "brute_points", "canonical_form",
    "check_z_fibration", "count_Y", "count_Z", "dynkin", "dynkin_tiling",
    "e_long_branch_end", "field_from_order", "field_make", "flip",
    "leaf_removal_transforms", "leafy_tiling", "normal_form_instance",
    "normal_form_slots", "normalize", "white_leaf",
]
