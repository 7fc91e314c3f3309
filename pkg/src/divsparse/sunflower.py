"""Sunflower-pruned construction of k-max-distance sparsifiers.

A family K ⊆ D is a k-max-distance sparsifier of D with respect to a
reference family F when, for every k reference sets and every vector of
distance lower bounds, F-tuple demands are achievable within K exactly when
they are achievable within D.  This module builds one with respect to the
ball B(empty, r) for domains whose members have cardinality at most
ell <= r, using only the exact empty extension capability.

The construction grows K one member per pass.  A new member of size l' must
avoid a blocker set Y that intersects every current member of size l' and
the core of every sunflower of kr+1 equal-size members, which guarantees
progress and keeps K sunflower-free enough for the classic sunflower bound
(l+1)! (kr+1)^l to apply.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterator

from .core import (
    DomainOracle,
    Found,
    GuardError,
    NotFound,
    SetFamily,
    SparsifierReport,
    SubsetMask,
    TrivialSparsifier,
)

#: Blocker sets are enumerated over subsets of the union of current members;
#: refuse to enumerate more than 2^20 of them.
BLOCKER_UNION_GUARD = 20


@dataclass(frozen=True)
class Sunflower:
    """Equal-size sets whose pairwise intersections all equal one core."""

    petals: SetFamily
    core: SubsetMask


def is_sunflower(family: SetFamily) -> Sunflower | None:
    """Return the sunflower structure of ``family`` or None.

    A single-petal family is a sunflower whose core is the petal itself;
    a two-petal family is one with core equal to the intersection.
    Mixed member cardinalities are a usage error.
    """
    if len(family) == 0:
        raise ValueError("a sunflower has at least one petal")
    sizes = {len(m) for m in family}
    if len(sizes) > 1:
        raise ValueError("sunflower petals must have equal cardinality")
    if len(family) == 1:
        return Sunflower(family, family.members[0])
    bits = family.bits_list()
    core = bits[0] & bits[1]
    for a, b in combinations(bits, 2):
        if a & b != core:
            return None
    return Sunflower(family, SubsetMask(family.universe_size, core))


def _bits_of(mask_bits: int) -> list[int]:
    out = []
    while mask_bits:
        low = mask_bits & -mask_bits
        out.append(low.bit_length() - 1)
        mask_bits ^= low
    return out


def _has_disjoint_subfamily(diffs: list[int], need: int) -> bool:
    """Whether ``need`` pairwise-disjoint masks can be picked from ``diffs``."""
    diffs = sorted(diffs, key=lambda b: b.bit_count())

    def rec(idx: int, used: int, count: int) -> bool:
        if count >= need:
            return True
        if count + (len(diffs) - idx) < need:
            return False
        for j in range(idx, len(diffs)):
            if count + (len(diffs) - j) < need:
                return False
            if diffs[j] & used == 0 and rec(j + 1, used | diffs[j], count + 1):
                return True
        return False

    return rec(0, 0, 0)


def _sunflower_cores(group: list[int], t: int, universe_size: int) -> list[int]:
    """Cores of all size-``t`` sunflowers within one equal-cardinality group.

    For t >= 2 every core is the intersection of two petals, so candidates
    are pairwise intersections; a candidate is confirmed when t petals
    containing it have pairwise-disjoint remainders.  For t == 1 each member
    is its own single-petal sunflower with itself as core.
    """
    if t <= 0:
        raise ValueError("sunflower size must be positive")
    if t == 1:
        return list(group)
    if len(group) < t:
        return []
    # t pairwise-disjoint nonempty remainders cannot fit in the universe
    if t > universe_size:
        return []
    cores: list[int] = []
    seen: set[int] = set()
    for a, b in combinations(group, 2):
        cand = a & b
        if cand in seen:
            continue
        seen.add(cand)
        if t == 2:
            cores.append(cand)  # the generating pair is itself a witness
            continue
        diffs = [g ^ cand for g in group if g & cand == cand]
        if len(diffs) >= t and _has_disjoint_subfamily(diffs, t):
            cores.append(cand)
    return cores


def _candidate_blockers(
    union_bits: int, required: list[int]
) -> Iterator[int]:
    """Subsets of the member union that intersect every required set.

    Ordered by increasing size, then lexicographically by member indices.
    Yields nothing when some required set is empty (nothing can hit it);
    yields the empty set first when there is nothing to intersect.
    """
    if any(req == 0 for req in required):
        return
    elems = _bits_of(union_bits)
    if len(elems) > BLOCKER_UNION_GUARD:
        raise GuardError(
            f"blocker enumeration over {len(elems)} elements exceeds the "
            f"2^{BLOCKER_UNION_GUARD} guard"
        )
    for size in range(len(elems) + 1):
        for combo in combinations(elems, size):
            y = 0
            for i in combo:
                y |= 1 << i
            if all(y & req for req in required):
                yield y


def blocker_candidates(
    family: SetFamily, ell_prime: int, t: int
) -> list[SubsetMask]:
    """All qualifying blocker sets for one cardinality class, in order.

    Returns every Y inside the union of ``family`` that intersects every
    member of cardinality ``ell_prime`` and the core of every size-``t``
    sunflower among those members, ordered by (size, lexicographic).
    """
    if t < 1:
        raise ValueError("sunflower size t must be positive")
    if ell_prime < 0:
        raise ValueError("cardinality must be nonnegative")
    n = family.universe_size
    group = [b for b in family.bits_list() if b.bit_count() == ell_prime]
    required = group + _sunflower_cores(group, t, n)
    return [
        SubsetMask(n, y)
        for y in _candidate_blockers(family.union_bits(), required)
    ]


@dataclass(frozen=True)
class SmallSparsifyParams:
    """Parameters for the small-cardinality sparsifier.

    ``k`` is the sparsifier order, ``r`` the reference ball radius, and
    ``ell`` the maximum member cardinality of the domain (requires
    ell <= r).
    """

    k: int
    r: int
    ell: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.r < 0 or self.ell < 0:
            raise ValueError("r and ell must be nonnegative")
        if self.ell > self.r:
            raise ValueError(f"ell ({self.ell}) must not exceed r ({self.r})")


def k_sparsify(params: SmallSparsifyParams, oracle: DomainOracle) -> SparsifierReport:
    """Build a k-max-distance sparsifier w.r.t. B(empty, r).

    Grows the output one member per pass: for each cardinality l' it
    enumerates qualifying blocker sets Y in deterministic order and adds the
    first witness the empty extension oracle produces, stopping when a full
    pass adds nothing.  Output size is bounded by (ell+1)! (kr+1)^ell.

    Each cardinality class is first probed with an unconstrained query;
    classes with no member at all are skipped, which changes only the call
    count, never the output.  If the oracle surfaces a trivial sparsifier,
    that family is returned at once with ``shortcut`` set.
    """
    n = oracle.universe_size
    t = params.k * params.r + 1
    ell_cap = min(params.ell, n)
    members: list[int] = []
    member_set: set[int] = set()
    calls = 0
    passes = 0

    def query(r: int, y_bits: int):
        nonlocal calls
        calls += 1
        return oracle.exact_empty_extend(r, SubsetMask(n, y_bits))

    def report(family: SetFamily, shortcut: bool) -> SparsifierReport:
        return SparsifierReport(
            family=family,
            mode="small",
            k=params.k,
            r=params.r,
            ell=params.ell,
            calls_extend=calls,
            passes=passes,
            shortcut=shortcut,
        )

    while True:
        passes += 1
        union_bits = 0
        for b in members:
            union_bits |= b
        added = False
        for lp in range(ell_cap + 1):
            group = [b for b in members if b.bit_count() == lp]
            required = group + _sunflower_cores(group, t, n)
            gen = _candidate_blockers(union_bits, required)
            first = next(gen, None)
            if first is None:
                continue
            if first != 0:
                # cardinality probe: no size-lp member at all kills every Y
                out = query(lp, 0)
                if isinstance(out, TrivialSparsifier):
                    return report(out.family, shortcut=True)
                if isinstance(out, NotFound):
                    continue

            for y in chain((first,), gen):
                out = query(lp, y)
                if isinstance(out, TrivialSparsifier):
                    return report(out.family, shortcut=True)
                if isinstance(out, Found):
                    got = out.witness
                    assert got.universe_size == n
                    assert len(got) == lp and got.bits & y == 0
                    assert got.bits not in member_set
                    members.append(got.bits)
                    member_set.add(got.bits)
                    added = True
                    break
            if added:
                break
        if not added:
            break

    return report(SetFamily.from_bits(n, members), shortcut=False)
