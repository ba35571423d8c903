"""Exact invariants of torsion-free Abelian groups."""
from .characteristics import (INF, Characteristic, HType, char_equiv, char_join, char_leq,
                              char_meet, char_shift, htype_leq, htype_meet, htype_of)
from .groups import (OMEGA, Element, FDGroup, MixedGroup, PadicBlock, RationalGroup,
                     SzmielewProfile, elem_char, elem_height, elem_htype,
                     elementarily_equivalent, height_rank1, iso1_equivalent, member,
                     realizable_htypes, szmielew_profile, tf_invariant)
from .isotypy import (TypeRankProfile, a_of_t, a_star_of_t, fd_isomorphic,
                      max_independent_of_type, rank_At, separable_isotypic, type_rank_profile)
from .padic import (Ladder, PadicValuation, TruncatedPAdic, check_unique_dependency,
                    extract_ladder, padic_arith, realize_ladder, valuation)
from .reduction import (DependencyRelation, ReductionResult, find_dependency, reduce_pair,
                        reduce_tuple, split_infinite_dependency)
from .twotype import TwoType, classify_pair, realize_two_type, validate_two_type

__all__ = [
    "a_of_t", "a_star_of_t", "char_equiv", "char_join", "char_leq", "char_meet", "char_shift",
    "Characteristic", "check_unique_dependency", "classify_pair", "DependencyRelation",
    "elem_char", "elem_height", "elem_htype", "Element", "elementarily_equivalent",
    "extract_ladder", "fd_isomorphic", "FDGroup", "find_dependency", "height_rank1", "HType",
    "htype_leq", "htype_meet", "htype_of", "INF", "iso1_equivalent", "Ladder",
    "max_independent_of_type", "member", "MixedGroup", "OMEGA", "padic_arith", "PadicBlock",
    "PadicValuation", "rank_At", "RationalGroup", "realizable_htypes", "realize_ladder",
    "realize_two_type", "reduce_pair", "reduce_tuple", "ReductionResult", "separable_isotypic",
    "split_infinite_dependency", "szmielew_profile", "SzmielewProfile", "tf_invariant",
    "TruncatedPAdic", "TwoType", "type_rank_profile", "TypeRankProfile", "validate_two_type",
    "valuation",
]

__version__ = "0.1.0"
