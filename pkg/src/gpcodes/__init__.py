"""Erasure codes on symbol arrays over GF(2^w).

The package implements a family of array codes built from nested
maximum-distance-separable row codes (``gpc``), their extensions with
global parities (``epc``), exact brute-force ground truth for both
(``oracle``), the underlying field and matrix layers (``fields``,
``linalg``) and file formats plus a CLI (``files``, ``cli``).
"""

from .fields import (GF, default_field, field_with_order,
                     find_construction_prime, is_irreducible,
                     is_two_primitive, mp_polynomial, PrimeSearchError)
from .linalg import (Matrix, LinearSolveError, NoSolutionError,
                     UnderdeterminedError, kron, null_space, rank,
                     row_reduce, solve, vandermonde, vstack)
from .gpc import (DecodeTrace, ErasureProfile, GpcParams, SymbolArray,
                  UncorrectableError, component_parity_check,
                  decodable_profile, decode_iterative, decode_rows, encode,
                  erase_positions, full_parity_matrix, is_member,
                  min_weight_codeword)
from .epc import (EpcShape, LinearCode, build_h2, build_h3, build_optimal_g1,
                  check_condition_35, distance_bound, lc_encode,
                  lc_erasure_decode, lc_is_member)
from .oracle import (DistanceCapError, DistanceReport, EquivalenceReport,
                     SearchBudgetError, brute_min_distance, correctable,
                     decoder_oracle_equivalence, random_decodable_pattern)

__version__ = "0.1.0"

__all__ = [
    "GF", "default_field", "field_with_order", "find_construction_prime",
    "is_irreducible", "is_two_primitive", "mp_polynomial", "PrimeSearchError",
    "Matrix", "LinearSolveError", "NoSolutionError", "UnderdeterminedError",
    "kron", "null_space", "rank", "row_reduce", "solve", "vandermonde",
    "vstack",
    "DecodeTrace", "ErasureProfile", "GpcParams", "SymbolArray",
    "UncorrectableError", "component_parity_check", "decodable_profile",
    "decode_iterative", "decode_rows", "encode", "erase_positions",
    "full_parity_matrix", "is_member", "min_weight_codeword",
    "EpcShape", "LinearCode", "build_h2", "build_h3", "build_optimal_g1",
    "check_condition_35", "distance_bound", "lc_encode", "lc_erasure_decode",
    "lc_is_member",
    "DistanceCapError", "DistanceReport", "EquivalenceReport",
    "SearchBudgetError", "brute_min_distance", "correctable",
    "decoder_oracle_equivalence", "random_decodable_pattern",
]
