"""Exact supertropical (max-plus with ghosts) linear algebra and nilpotent Lie algebras."""

from .digraph import (
    CycleWitness,
    Reachability,
    SupportDigraph,
    find_cycle,
    longest_path_length,
    max_cycle_mean,
    reachability,
    support,
    topological_order,
)
from .errors import BadScalar, DimensionMismatch, NotADAG, ParseError, SupertropicalError
from .lie import (
    BracketSeries,
    DerivedSeries,
    LieSystem,
    LowerCentralSeries,
    Obstructed,
    Triangularized,
    check_derived_containment,
    check_two_way_obstruction,
    decide,
    derived_series,
    dominant_matrix,
    lower_central_series,
    support_closure_oracle,
)
from .matrix import (
    Permutation,
    SuperMatrix,
    bracket,
    conjugate,
    dominates,
    is_nilpotent_by_power,
    is_strictly_upper,
    magnitudes,
    mat_add,
    mat_mul,
    mat_pow,
    nilpotency_index,
    permutation_matrix,
    transpose,
)
from .semiring import EPS, SuperScalar, is_eps, is_ghost, super_add, super_mul, trop_add, trop_mul

__all__ = [
    "__version__",
    "EPS",
    "SuperScalar",
    "trop_add",
    "trop_mul",
    "super_add",
    "super_mul",
    "is_eps",
    "is_ghost",
    "SuperMatrix",
    "Permutation",
    "mat_add",
    "mat_mul",
    "mat_pow",
    "bracket",
    "conjugate",
    "is_strictly_upper",
    "is_nilpotent_by_power",
    "nilpotency_index",
    "dominates",
    "magnitudes",
    "transpose",
    "permutation_matrix",
    "SupportDigraph",
    "CycleWitness",
    "Reachability",
    "support",
    "find_cycle",
    "topological_order",
    "longest_path_length",
    "reachability",
    "max_cycle_mean",
    "LieSystem",
    "Triangularized",
    "Obstructed",
    "BracketSeries",
    "LowerCentralSeries",
    "DerivedSeries",
    "dominant_matrix",
    "decide",
    "support_closure_oracle",
    "lower_central_series",
    "derived_series",
    "check_derived_containment",
    "check_two_way_obstruction",
    "SupertropicalError",
    "DimensionMismatch",
    "NotADAG",
    "ParseError",
    "BadScalar",
]

__version__ = "0.1.0"
