"""Construct and brute-force verify completely regular and uniformly packed
linear codes over finite fields."""

from __future__ import annotations

__version__ = "0.1.0"

from .code import CosetTable, LinearCode, code_from_parity, coset_weights, outer_distance
from .families import (
    corollary_family,
    kronecker_code,
    lifted_code,
    remark_counterexample,
    theorem_main_family,
    up_family,
)
from .gf import FiniteField, field_create, gf
from .linalg import FieldMatrix, hamming_matrix, kronecker
from .regularity import IntersectionArray, NotCR, check_completely_regular

__all__ = [
    "CosetTable", "FieldMatrix", "FiniteField", "IntersectionArray", "LinearCode",
    "NotCR", "check_completely_regular", "code_from_parity", "corollary_family",
    "coset_weights", "field_create", "gf", "hamming_matrix", "kronecker",
    "kronecker_code", "lifted_code", "outer_distance", "remark_counterexample",
    "theorem_main_family", "up_family",
]
