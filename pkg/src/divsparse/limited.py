"""Randomized construction of d-limited k-max-distance sparsifiers.

The pipeline works for domains with unbounded member cardinality, given the
+-1 optimization and exact extension capabilities:

1. Collect up to k cluster centers from the domain, each more than 2d from
   the previous ones, by repeatedly optimizing random +-1 weights.  If k+1
   such members turn up they already form a valid sparsifier (any reference
   set is within distance d of at most one of them) and we stop.
2. Otherwise every member lies within the cluster radius p of some center
   (with probability at least 1 - epsilon).  For each center C, the members
   near C shifted by C form a family of small sets, so the sunflower
   construction applies; its empty extension queries translate into exact
   extension queries on the original domain.  Shifting the outputs back and
   taking the union over centers yields the sparsifier.

Soundness of step 1 is unconditional: a returned far set is re-verified to
be more than 2d from every center.  Only completeness (finding a far set
when one exists beyond radius p) is probabilistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import (
    CapabilityError,
    CountingOracle,
    DomainOracle,
    ExtensionOutcome,
    ExtensionQuery,
    Found,
    OracleContext,
    SetFamily,
    SparsifierReport,
    SubsetMask,
    WeightVector,
)
from .rng import SplitMix64
from .sunflower import SmallSparsifyParams, k_sparsify


def default_cluster_radius(k: int, d: int) -> int:
    """Smallest cluster radius the completeness proof supports."""
    return (4 * d + 2) ** 2 * 2 ** (k - 1)


def default_trials(k: int, epsilon: float, n_centers: int) -> int:
    """Trial count making a single far-set call fail w.p. <= epsilon/(k+1).

    The success probability of one random-weight trial, when a member
    beyond the cluster radius exists, is at least
    2^(-2^c) * 4^(-c) for c current centers; inverting gives the count.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must be in (0, 1)")
    c = n_centers
    q_inverse = (2 ** (2**c)) * (4**c)
    return max(1, math.ceil(math.log((k + 1) / epsilon) * q_inverse))


@dataclass(frozen=True)
class LimitedSparsifyParams:
    """Parameters of the d-limited pipeline.

    ``p`` defaults to the provable cluster radius; overriding it below that
    bound voids the completeness guarantee (soundness stays) and is meant
    for experiments, with ``verify`` available to detect invalid outputs.
    """

    k: int
    d: int
    p: int | None = None
    epsilon: float = 0.01
    trials_override: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.d < 0:
            raise ValueError("d must be nonnegative")
        if self.p is None:
            object.__setattr__(self, "p", default_cluster_radius(self.k, self.d))
        if self.p <= 2 * self.d:
            raise ValueError(f"cluster radius p ({self.p}) must exceed 2d ({2 * self.d})")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must be in (0, 1)")
        if self.trials_override is not None and self.trials_override < 1:
            raise ValueError("trials_override must be positive")


@dataclass(frozen=True)
class ClusterResult:
    """Outcome of the far-set clustering phase.

    ``trivial`` False: ``family`` holds at most k centers and, with high
    probability, every member is within p of one of them.  ``trivial``
    True: ``family`` holds k+1 members pairwise more than 2d apart, itself
    a valid d-limited k-max-distance sparsifier.
    """

    family: SetFamily
    trivial: bool


def approx_far_set(
    oracle: DomainOracle,
    centers: SetFamily,
    d: int,
    p: int,
    trials: int,
    rng: SplitMix64,
) -> SubsetMask | None:
    """Look for a member more than 2d from every center.

    Each trial optimizes a fresh uniform +-1 weight vector; a candidate is
    returned only after its distances to all centers are checked, so any
    returned set is certainly far.  ``None`` after all trials means every
    member is within p of some center, up to the per-call error bound.
    """
    if p <= 2 * d:
        raise ValueError("p must exceed 2d")
    if trials < 1:
        raise ValueError("trials must be positive")
    n = oracle.universe_size
    center_bits = centers.bits_list()
    threshold = 2 * d
    for _ in range(trials):
        w = WeightVector.random(n, rng)
        best = oracle.opt_pm1(w)
        if best is None:
            return None  # empty domain
        bb = best.bits
        if all((bb ^ c).bit_count() > threshold for c in center_bits):
            return best
    return None


def cluster_or_trivial(
    oracle: DomainOracle,
    params: LimitedSparsifyParams,
    rng: SplitMix64 | None = None,
) -> ClusterResult:
    """Collect pairwise-far centers until the far-set search gives up.

    Stops with ``trivial=True`` as soon as k+1 far members accumulate.
    An empty domain yields zero centers.
    """
    if rng is None:
        rng = SplitMix64(params.seed)
    n = oracle.universe_size
    center_bits: list[int] = []
    while True:
        trials = params.trials_override
        if trials is None:
            trials = default_trials(params.k, params.epsilon, len(center_bits))
        far = approx_far_set(
            oracle,
            SetFamily.from_bits(n, center_bits),
            params.d,
            params.p,
            trials,
            rng,
        )
        if far is None:
            return ClusterResult(SetFamily.from_bits(n, center_bits), trivial=False)
        assert all(
            (far.bits ^ c).bit_count() > 2 * params.d for c in center_bits
        ), "far-set soundness violated"
        center_bits.append(far.bits)
        if len(center_bits) == params.k + 1:
            return ClusterResult(SetFamily.from_bits(n, center_bits), trivial=True)


class ShiftedEmptyExtension(DomainOracle):
    """Empty-extension view of the domain shifted by a cluster center.

    A query for a shifted member of cardinality ``r`` avoiding ``Y`` maps to
    an exact extension query on the original domain with center C, forced
    set Y intersect C, and forbidden set Y minus C; witnesses map back
    through the same shift.  Trivial-sparsifier outcomes pass through
    untouched (their members live in original coordinates).
    """

    def __init__(
        self, inner: DomainOracle, center: SubsetMask, ctx: OracleContext | None
    ) -> None:
        if center.universe_size != inner.universe_size:
            raise ValueError("center universe mismatch")
        self._inner = inner
        self._center = center
        self._ctx = ctx

    @property
    def universe_size(self) -> int:
        return self._inner.universe_size

    def exact_extend(
        self, query: ExtensionQuery, ctx: OracleContext | None = None
    ) -> ExtensionOutcome:
        raise CapabilityError("shifted view offers only the empty extension")

    def exact_empty_extend(
        self, r: int, forbidden: SubsetMask, ctx: OracleContext | None = None
    ) -> ExtensionOutcome:
        query = ExtensionQuery(
            center=self._center,
            radius=r,
            forced=forbidden & self._center,
            forbidden=forbidden - self._center,
        )
        out = self._inner.exact_extend(query, self._ctx)
        if isinstance(out, Found):
            return Found(out.witness ^ self._center)
        return out


def shifted_empty_extension(
    oracle: DomainOracle, center: SubsetMask, k: int, d: int, p: int | None = None
) -> ShiftedEmptyExtension:
    """Build the shifted empty-extension view with its query context."""
    if p is None:
        p = default_cluster_radius(k, d)
    return ShiftedEmptyExtension(oracle, center, OracleContext(k=k, d=d, p=p))


def dk_sparsify(oracle: DomainOracle, params: LimitedSparsifyParams) -> SparsifierReport:
    """Build a d-limited k-max-distance sparsifier w.r.t. all subsets.

    Runs the clustering phase, then one sunflower construction per center
    over the shifted neighborhood (member size cap p, ball radius p + d),
    and unions the shifted-back outputs.  A trivial sparsifier surfacing
    anywhere is returned at once (``scattered`` for the clustering branch,
    ``shortcut`` for one produced by an extension query).  An empty domain
    yields the empty family, which satisfies the definition vacuously.
    """
    counting = CountingOracle(oracle)
    rng = SplitMix64(params.seed)
    n = oracle.universe_size
    assert params.p is not None

    def report(family: SetFamily, passes: int, shortcut: bool, scattered: bool):
        return SparsifierReport(
            family=family,
            mode="limited",
            k=params.k,
            d=params.d,
            p=params.p,
            epsilon=params.epsilon,
            seed=params.seed,
            calls_opt=counting.calls_opt,
            calls_extend=counting.calls_extend,
            passes=passes,
            shortcut=shortcut,
            scattered=scattered,
        )

    clusters = cluster_or_trivial(counting, params, rng)
    if clusters.trivial:
        return report(clusters.family, passes=0, shortcut=False, scattered=True)

    ctx = OracleContext(k=params.k, d=params.d, p=params.p)
    out_bits: list[int] = []
    passes = 0
    for center in clusters.family:
        view = ShiftedEmptyExtension(counting, center, ctx)
        sub = k_sparsify(
            SmallSparsifyParams(k=params.k, r=params.p + params.d, ell=params.p),
            view,
        )
        passes += sub.passes
        if sub.shortcut:
            return report(sub.family, passes=passes, shortcut=True, scattered=False)
        out_bits.extend(b ^ center.bits for b in sub.family.bits_list())

    family = SetFamily.dedup_from_bits(n, out_bits)
    return report(family, passes=passes, shortcut=False, scattered=False)
