"""
forestcount
Exact counts of labeled forests and a machine check of the sign-reversing
involution that explains the alternating sum
"""

from forestcount.errors import (
    ForestCountError,
    DomainError,
    CapacityError,
    ValidationError,
    InvariantViolation
)

from forestcount.exactmath import (
    Natural,
    ExactRational,
    SignedCount,
    TakacsTerm,
    factorial,
    double_factorial_odd,
    binomial,
    matching_selection_count,
    rooted_forest_count_specified_roots,
    cayley_rooted_forest_count,
    takacs_term,
    takacs_terms,
    takacs_count,
    takacs_count_eq1,
    takacs_sequence,
    cayley_sequence
)

from forestcount.forest_model import (
    ROOT,
    RootedForest,
    PPRForest,
    UnrootedForest,
    validate_ppr,
    validate_rooted,
    validate_unrooted,
    pair_count,
    weight,
    children,
    descendants,
    is_inversion_initiating,
    is_special,
    to_unrooted,
    from_unrooted,
    canonical_encode
)

from forestcount.enumeration import (
    DEFAULT_LIMIT,
    enumerate_unrooted_forests,
    enumerate_rooted_forests,
    enumerate_all_rooted_forests,
    enumerate_ppr_forests,
    count_stream,
    count_forests
)

from forestcount.involution import (
    MergeSite,
    SplitSite,
    SPECIAL,
    InvolutionAction,
    VerificationReport,
    find_merge_site,
    find_split_site,
    classify,
    apply,
    verify_involution
)

__all__ = [
    # Errors
    'ForestCountError',
    'DomainError',
    'CapacityError',
    'ValidationError',
    'InvariantViolation',
    # Exact arithmetic
    'Natural',
    'ExactRational',
    'SignedCount',
    'TakacsTerm',
    'factorial',
    'double_factorial_odd',
    'binomial',
    'matching_selection_count',
    'rooted_forest_count_specified_roots',
    'cayley_rooted_forest_count',
    'takacs_term',
    'takacs_terms',
    'takacs_count',
    'takacs_count_eq1',
    'takacs_sequence',
    'cayley_sequence',
    # Forest model
    'ROOT',
    'RootedForest',
    'PPRForest',
    'UnrootedForest',
    'validate_ppr',
    'validate_rooted',
    'validate_unrooted',
    'pair_count',
    'weight',
    'children',
    'descendants',
    'is_inversion_initiating',
    'is_special',
    'to_unrooted',
    'from_unrooted',
    'canonical_encode',
    # Enumeration
    'DEFAULT_LIMIT',
    'enumerate_unrooted_forests',
    'enumerate_rooted_forests',
    'enumerate_all_rooted_forests',
    'enumerate_ppr_forests',
    'count_stream',
    'count_forests',
    # Involution
    'MergeSite',
    'SplitSite',
    'SPECIAL',
    'InvolutionAction',
    'VerificationReport',
    'find_merge_site',
    'find_split_site',
    'classify',
    'apply',
    'verify_involution',
]
