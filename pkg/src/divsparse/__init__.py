"""Max-distance sparsifiers of implicit combinatorial solution domains.

The library computes small subfamilies of a solution domain that preserve
all achievable Hamming-distance profiles (max-distance sparsifiers) and
solves diversification (max-min, max-sum) and clustering (k-center,
k-sum-of-radii) problems exactly on top of them, for domains given only
through optimization and exact-extension oracles.  A brute-force engine
validates every component on small instances.
"""

from .core import (
    CapabilityError,
    CountingOracle,
    DomainOracle,
    ExtensionOutcome,
    ExtensionQuery,
    Found,
    GroundSet,
    GuardError,
    MASK_WIDTH_LIMIT,
    NOT_FOUND,
    NotFound,
    OracleContext,
    SetFamily,
    SparsifierReport,
    SubsetMask,
    TrivialSparsifier,
    WeightVector,
    hamming,
    modified_hamming,
)
from .limited import (
    ClusterResult,
    LimitedSparsifyParams,
    approx_far_set,
    cluster_or_trivial,
    default_cluster_radius,
    default_trials,
    dk_sparsify,
    shifted_empty_extension,
)
from .rng import SplitMix64
from .solvers import (
    GloballyInfeasible,
    ProblemSpec,
    SolveAnswer,
    SparsifierBuilder,
    limited_builder,
    min_cluster_radius,
    small_builder,
    solve,
    solve_k_center,
    solve_k_sum_radii,
    solve_max_min,
    solve_max_sum,
)
from .sunflower import (
    SmallSparsifyParams,
    Sunflower,
    blocker_candidates,
    is_sunflower,
    k_sparsify,
)

__version__ = "0.1.0"

__all__ = [
    "CapabilityError",
    "ClusterResult",
    "CountingOracle",
    "DomainOracle",
    "ExtensionOutcome",
    "ExtensionQuery",
    "Found",
    "GloballyInfeasible",
    "GroundSet",
    "GuardError",
    "LimitedSparsifyParams",
    "MASK_WIDTH_LIMIT",
    "NOT_FOUND",
    "NotFound",
    "OracleContext",
    "ProblemSpec",
    "SetFamily",
    "SmallSparsifyParams",
    "SolveAnswer",
    "SparsifierBuilder",
    "SparsifierReport",
    "SplitMix64",
    "SubsetMask",
    "Sunflower",
    "TrivialSparsifier",
    "WeightVector",
    "approx_far_set",
    "blocker_candidates",
    "cluster_or_trivial",
    "default_cluster_radius",
    "default_trials",
    "dk_sparsify",
    "hamming",
    "is_sunflower",
    "k_sparsify",
    "limited_builder",
    "min_cluster_radius",
    "modified_hamming",
    "shifted_empty_extension",
    "small_builder",
    "solve",
    "solve_k_center",
    "solve_k_sum_radii",
    "solve_max_min",
    "solve_max_sum",
]
