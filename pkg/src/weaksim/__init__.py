"""weaksim: exact analysis of finite semimetric spaces.

Spaces store their distance matrices either as exact rationals or as
tolerance-compared floats.  On top of that sit axiom checks, distance-set
and rank extraction, a deterministic search for weak similarities (point
bijections that preserve the distance order, realized by a forced strictly
increasing scaling table), distance transforms with a generalized
subadditivity checker and subadditive extension, and reproducible example
families.
"""

from .backends import (
    DEFAULT_EPSILON,
    RATIONAL,
    Backend,
    FloatBackend,
    RationalBackend,
    parse_exact,
)
from .errors import (
    AmbiguousRanking,
    BadSequence,
    CardinalityMismatch,
    DomainGap,
    DomainMismatch,
    DuplicateLabel,
    DuplicateValue,
    EmptyDomain,
    FormatError,
    LabelMismatch,
    NonpositiveExponent,
    NonzeroAtZero,
    NoPositiveElement,
    NotPositiveDefinite,
    NotSemimetric,
    NotStrictlyIncreasing,
    SpaceMismatch,
    WeaksimError,
    ZeroMissing,
)
from .spaces import (
    DistanceSet,
    RankMatrix,
    Space,
    Verdict,
    coincreasing,
    distance_set,
    is_metric,
    is_ultrametric,
    max_ultrametric_from_set,
    new_space,
    rank_matrix,
)
from .morphisms import (
    Classification,
    ScalingFunction,
    WeakSimilarity,
    build_realization,
    classify,
    classify_scaling,
    compose,
    enumerate_weak_similarities,
    factorize,
    find_weak_similarity,
    increasing_bijection,
    invert,
    pullback,
    verify,
)
from .transforms import (
    FunctionTable,
    MetricPreservingVerdict,
    SubadditiveHull,
    SubadditivityVerdict,
    apply_function,
    check_generalized_subadditivity,
    function_table,
    hull,
    hull_eval,
    is_metric_preserving,
    linear_table,
    power_table,
    snowflake,
)
from .families import (
    FamilySpec,
    derive_partner,
    example_2_6,
    example_2_6_star,
    harmonic,
    one_plus_harmonic,
    random_metric,
    random_ultrametric,
    segment_grid,
    snowflake_segment,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousRanking",
    "Backend",
    "BadSequence",
    "CardinalityMismatch",
    "Classification",
    "DEFAULT_EPSILON",
    "DistanceSet",
    "DomainGap",
    "DomainMismatch",
    "DuplicateLabel",
    "DuplicateValue",
    "EmptyDomain",
    "FamilySpec",
    "FloatBackend",
    "FormatError",
    "FunctionTable",
    "LabelMismatch",
    "MetricPreservingVerdict",
    "NonpositiveExponent",
    "NonzeroAtZero",
    "NoPositiveElement",
    "NotPositiveDefinite",
    "NotSemimetric",
    "NotStrictlyIncreasing",
    "RATIONAL",
    "RankMatrix",
    "RationalBackend",
    "ScalingFunction",
    "Space",
    "SpaceMismatch",
    "SubadditiveHull",
    "SubadditivityVerdict",
    "Verdict",
    "WeakSimilarity",
    "WeaksimError",
    "ZeroMissing",
    "apply_function",
    "build_realization",
    "check_generalized_subadditivity",
    "classify",
    "classify_scaling",
    "coincreasing",
    "compose",
    "derive_partner",
    "distance_set",
    "enumerate_weak_similarities",
    "example_2_6",
    "example_2_6_star",
    "factorize",
    "find_weak_similarity",
    "function_table",
    "harmonic",
    "hull",
    "hull_eval",
    "increasing_bijection",
    "invert",
    "is_metric",
    "is_metric_preserving",
    "is_ultrametric",
    "linear_table",
    "max_ultrametric_from_set",
    "new_space",
    "one_plus_harmonic",
    "parse_exact",
    "power_table",
    "pullback",
    "random_metric",
    "random_ultrametric",
    "rank_matrix",
    "segment_grid",
    "snowflake",
    "snowflake_segment",
    "verify",
]
