"""Exact-arithmetic toolkit for multi-unit location games on [0,1].

Players place several facilities each on the unit interval; uniformly
distributed customers walk to the nearest one. Everything is computed in
exact rational arithmetic so equilibrium conditions, which are equalities,
can be certified rather than approximated.
"""

from .core import (
    FacilityClass,
    FacilityRef,
    FlattenedPair,
    Game,
    PureProfile,
    PureStrategy,
    as_fraction,
    classify,
    flatten,
    has_dominant_player,
    make_game,
)
from .equilibrium import (
    ConditionResult,
    ExistenceResult,
    PartitionPlan,
    VerificationReport,
    construct_even,
    construct_mixed,
    construct_odd,
    construct_pure,
    exists_pure,
    find_partition,
    two_player_equilibrium,
    verify_multi_unit,
    verify_single_unit,
    verify_two_player,
)
from .errors import (
    ConstructionUnavailable,
    HotellingError,
    InvalidDeviation,
    InvalidGame,
    InvalidInput,
    InvalidPartition,
    InvalidStrategy,
    SearchTooLarge,
    SupportTooLarge,
    WrongGameKind,
)
from .mixed import (
    MeasureQuery,
    MixedProfile,
    MixedStrategy,
    SoiResult,
    combined_strategy,
    is_soi,
    make_olk,
    mixed_payoff,
    mu,
    optimal_locations,
)
from .oracle import (
    DeviationResult,
    best_response,
    certify_no_deviation,
    grid_search,
    is_equilibrium,
)
from .payoff import (
    MassReport,
    OffsetLocation,
    exactly,
    just_above,
    just_below,
    limit_payoff,
    masses,
    payoff_vector,
    social_cost,
)

__version__ = "0.1.0"

__all__ = [
    "ConditionResult",
    "ConstructionUnavailable",
    "DeviationResult",
    "ExistenceResult",
    "FacilityClass",
    "FacilityRef",
    "FlattenedPair",
    "Game",
    "HotellingError",
    "InvalidDeviation",
    "InvalidGame",
    "InvalidInput",
    "InvalidPartition",
    "InvalidStrategy",
    "MassReport",
    "MeasureQuery",
    "MixedProfile",
    "MixedStrategy",
    "OffsetLocation",
    "PartitionPlan",
    "PureProfile",
    "PureStrategy",
    "SearchTooLarge",
    "SoiResult",
    "SupportTooLarge",
    "VerificationReport",
    "WrongGameKind",
    "as_fraction",
    "best_response",
    "certify_no_deviation",
    "classify",
    "combined_strategy",
    "construct_even",
    "construct_mixed",
    "construct_odd",
    "construct_pure",
    "exactly",
    "exists_pure",
    "find_partition",
    "flatten",
    "grid_search",
    "has_dominant_player",
    "is_equilibrium",
    "is_soi",
    "just_above",
    "just_below",
    "limit_payoff",
    "make_game",
    "make_olk",
    "masses",
    "mixed_payoff",
    "mu",
    "optimal_locations",
    "payoff_vector",
    "social_cost",
    "two_player_equilibrium",
    "verify_multi_unit",
    "verify_single_unit",
    "verify_two_player",
]
