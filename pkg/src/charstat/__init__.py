"""Exact symmetric-function machinery for moments of permutation statistics on conjugacy classes."""

from .atomic import (
    CyclePathType,
    PartialPermutation,
    atomic_p_expansion,
    atomic_s_expansion,
    char_on_partial_perm,
    cycle_path_type,
    partial_perm,
    skew_h_graph,
    skew_p_graph,
    stable_atomic_expansion,
)
from .charpoly import CharacterPolynomial, char_value, character_polynomial, eval_class_poly
from .errors import DomainError, ResourceError
from .partitions import partition, partitions_of
from .pathpower import (
    StableSchurExpansion,
    p_to_path,
    path_to_m,
    path_to_p,
    path_to_s,
    stable_path_expansion,
)
from .poly import Poly
from .regstat import (
    ClassPolynomial,
    PackedTriple,
    RegularStatistic,
    bivincular,
    builtin,
    leading_limit,
    matching_moment,
    matching_stat,
    moment_poly,
    reynolds_poly,
    stat_ch,
    triple,
    variance_poly,
)
from .ribbons import chi, monotonic_tilings
from .symfunc import Basis, SymFunc, convert, multiply

__all__ = [
    "Basis", "CharacterPolynomial", "ClassPolynomial", "CyclePathType", "DomainError", "PackedTriple",
    "PartialPermutation", "Poly", "RegularStatistic", "ResourceError", "StableSchurExpansion", "SymFunc",
    "atomic_p_expansion", "atomic_s_expansion", "bivincular", "builtin", "char_on_partial_perm", "char_value",
    "character_polynomial", "chi", "convert", "cycle_path_type", "eval_class_poly", "leading_limit",
    "matching_moment", "matching_stat", "moment_poly", "monotonic_tilings", "multiply", "p_to_path",
    "partial_perm", "partition", "partitions_of", "path_to_m", "path_to_p", "path_to_s", "reynolds_poly",
    "skew_h_graph", "skew_p_graph", "stable_atomic_expansion", "stable_path_expansion", "stat_ch", "triple",
    "variance_poly",
]
