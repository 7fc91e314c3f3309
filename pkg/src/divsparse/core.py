"""Ground-set arithmetic, Hamming distances, and the oracle contracts.

Elements of the ground set are dense integer indices ``0..n-1`` and every
subset is a fixed-width bitmask, so set algebra is plain integer arithmetic
and families have a canonical on-disk form.  All types in this module are
immutable after construction and safe to share across threads; every
operation is a pure function.

Hot paths (oracle scans, verification) work on raw ``int`` masks internally
and wrap them into :class:`SubsetMask` only at API boundaries.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Iterable, Iterator

#: Cap on representable universe sizes.  Masks are arbitrary-precision ints,
#: so this is a policy guard, not a storage limit; raise it if you need to.
MASK_WIDTH_LIMIT = 64


class CapabilityError(RuntimeError):
    """A capability or query that this domain adapter does not offer."""


class GuardError(RuntimeError):
    """A desk-scale size guard was exceeded."""


def _check_universe_size(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"universe size must be a positive integer, got {n!r}")
    if n > MASK_WIDTH_LIMIT:
        raise ValueError(
            f"universe size {n} exceeds the configured mask width limit "
            f"({MASK_WIDTH_LIMIT})"
        )


@dataclass(frozen=True)
class GroundSet:
    """The finite universe whose subsets form solutions."""

    size: int
    element_names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        _check_universe_size(self.size)
        if self.element_names is not None:
            if len(self.element_names) != self.size:
                raise ValueError(
                    f"expected {self.size} element names, got "
                    f"{len(self.element_names)}"
                )

    def name_of(self, index: int) -> str:
        if not 0 <= index < self.size:
            raise ValueError(f"element index {index} out of range")
        if self.element_names is None:
            return str(index)
        return self.element_names[index]


@dataclass(frozen=True)
class SubsetMask:
    """A subset of a ground set, stored as a membership bitmask."""

    universe_size: int
    bits: int

    def __post_init__(self) -> None:
        _check_universe_size(self.universe_size)
        if not 0 <= self.bits < (1 << self.universe_size):
            raise ValueError(
                f"mask {self.bits:#x} has members outside a universe of size "
                f"{self.universe_size}"
            )

    @classmethod
    def empty(cls, universe_size: int) -> "SubsetMask":
        return cls(universe_size, 0)

    @classmethod
    def full(cls, universe_size: int) -> "SubsetMask":
        return cls(universe_size, (1 << universe_size) - 1)

    @classmethod
    def from_indices(cls, universe_size: int, indices: Iterable[int]) -> "SubsetMask":
        bits = 0
        for i in indices:
            if not 0 <= i < universe_size:
                raise ValueError(
                    f"element index {i} out of range for universe size {universe_size}"
                )
            bits |= 1 << i
        return cls(universe_size, bits)

    def members(self) -> tuple[int, ...]:
        out = []
        bits = self.bits
        while bits:
            low = bits & -bits
            out.append(low.bit_length() - 1)
            bits ^= low
        return tuple(out)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.universe_size and bool(self.bits >> index & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def _check_mate(self, other: "SubsetMask") -> None:
        if self.universe_size != other.universe_size:
            raise ValueError(
                f"universe mismatch: {self.universe_size} vs {other.universe_size}"
            )

    def __or__(self, other: "SubsetMask") -> "SubsetMask":
        self._check_mate(other)
        return SubsetMask(self.universe_size, self.bits | other.bits)

    def __and__(self, other: "SubsetMask") -> "SubsetMask":
        self._check_mate(other)
        return SubsetMask(self.universe_size, self.bits & other.bits)

    def __xor__(self, other: "SubsetMask") -> "SubsetMask":
        self._check_mate(other)
        return SubsetMask(self.universe_size, self.bits ^ other.bits)

    def __sub__(self, other: "SubsetMask") -> "SubsetMask":
        self._check_mate(other)
        return SubsetMask(self.universe_size, self.bits & ~other.bits)

    def complement(self) -> "SubsetMask":
        return SubsetMask(
            self.universe_size, ((1 << self.universe_size) - 1) ^ self.bits
        )

    def is_subset_of(self, other: "SubsetMask") -> bool:
        self._check_mate(other)
        return self.bits & ~other.bits == 0

    def __repr__(self) -> str:  # compact: {0,2}/4
        inner = ",".join(str(i) for i in self.members())
        return f"{{{inner}}}/{self.universe_size}"


@dataclass(frozen=True)
class SetFamily:
    """A duplicate-free, insertion-ordered list of subsets of one universe."""

    universe_size: int
    members: tuple[SubsetMask, ...]
    _member_bits: frozenset[int] = field(
        init=False, repr=False, compare=False, hash=False, default=frozenset()
    )

    def __post_init__(self) -> None:
        _check_universe_size(self.universe_size)
        seen: set[int] = set()
        for m in self.members:
            if m.universe_size != self.universe_size:
                raise ValueError("family member universe mismatch")
            if m.bits in seen:
                raise ValueError(f"duplicate family member {m!r}")
            seen.add(m.bits)
        object.__setattr__(self, "_member_bits", frozenset(seen))

    @classmethod
    def empty(cls, universe_size: int) -> "SetFamily":
        return cls(universe_size, ())

    @classmethod
    def of(cls, universe_size: int, masks: Iterable[SubsetMask]) -> "SetFamily":
        return cls(universe_size, tuple(masks))

    @classmethod
    def from_bits(cls, universe_size: int, bits: Iterable[int]) -> "SetFamily":
        return cls(
            universe_size, tuple(SubsetMask(universe_size, b) for b in bits)
        )

    @classmethod
    def dedup_from_bits(cls, universe_size: int, bits: Iterable[int]) -> "SetFamily":
        """Build a family keeping the first occurrence of each member."""
        seen: set[int] = set()
        kept: list[int] = []
        for b in bits:
            if b not in seen:
                seen.add(b)
                kept.append(b)
        return cls.from_bits(universe_size, kept)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[SubsetMask]:
        return iter(self.members)

    def __contains__(self, mask: SubsetMask) -> bool:
        return (
            mask.universe_size == self.universe_size
            and mask.bits in self._member_bits
        )

    def contains_bits(self, bits: int) -> bool:
        return bits in self._member_bits

    def bits_list(self) -> list[int]:
        return [m.bits for m in self.members]

    def union_bits(self) -> int:
        out = 0
        for m in self.members:
            out |= m.bits
        return out


@dataclass(frozen=True)
class WeightVector:
    """Element weights in {-1, +1} for the optimization capability."""

    universe_size: int
    weights: tuple[int, ...]
    positive_bits: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self) -> None:
        _check_universe_size(self.universe_size)
        if len(self.weights) != self.universe_size:
            raise ValueError(
                f"expected {self.universe_size} weights, got {len(self.weights)}"
            )
        pos = 0
        for i, w in enumerate(self.weights):
            if w == 1:
                pos |= 1 << i
            elif w != -1:
                raise ValueError(f"weight at index {i} must be -1 or +1, got {w!r}")
        object.__setattr__(self, "positive_bits", pos)

    @classmethod
    def random(cls, universe_size: int, rng) -> "WeightVector":
        """Draw uniformly from {-1,+1}^n, one generator step per element."""
        return cls(universe_size, tuple(rng.pm1() for _ in range(universe_size)))

    def weight_of_bits(self, bits: int) -> int:
        return 2 * (bits & self.positive_bits).bit_count() - bits.bit_count()

    def weight_of(self, mask: SubsetMask) -> int:
        if mask.universe_size != self.universe_size:
            raise ValueError("universe mismatch")
        return self.weight_of_bits(mask.bits)


def hamming(a: SubsetMask, b: SubsetMask) -> int:
    """Size of the symmetric difference |a ^ b|."""
    if a.universe_size != b.universe_size:
        raise ValueError(
            f"universe mismatch: {a.universe_size} vs {b.universe_size}"
        )
    return (a.bits ^ b.bits).bit_count()


def modified_hamming(a: SubsetMask, b: SubsetMask) -> int:
    """Hamming distance after identifying each set with its complement.

    ``min(|a ^ b|, |a ^ (U \\ b)|)``; it is 0 when b equals a or its
    complement and never exceeds floor(n / 2).
    """
    if a.universe_size != b.universe_size:
        raise ValueError(
            f"universe mismatch: {a.universe_size} vs {b.universe_size}"
        )
    plain = (a.bits ^ b.bits).bit_count()
    return min(plain, a.universe_size - plain)


@dataclass(frozen=True)
class ExtensionQuery:
    """Arguments of an exact-extension query.

    Asks for a domain member at Hamming distance exactly ``radius`` from
    ``center`` that contains ``forced`` and avoids ``forbidden``.
    """

    center: SubsetMask
    radius: int
    forced: SubsetMask
    forbidden: SubsetMask

    def __post_init__(self) -> None:
        n = self.center.universe_size
        if self.forced.universe_size != n or self.forbidden.universe_size != n:
            raise ValueError("query masks must share one universe")
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        if self.forced.bits & self.forbidden.bits:
            raise ValueError("forced and forbidden sets must be disjoint")

    def admits_bits(self, bits: int) -> bool:
        """Whether a candidate member satisfies all three constraints."""
        return (
            (bits ^ self.center.bits).bit_count() == self.radius
            and self.forced.bits & ~bits == 0
            and self.forbidden.bits & bits == 0
        )


@dataclass(frozen=True)
class Found:
    """Extension query succeeded; ``witness`` satisfies the constraints."""

    witness: SubsetMask


@dataclass(frozen=True)
class NotFound:
    """No domain member satisfies the query."""


@dataclass(frozen=True)
class TrivialSparsifier:
    """Shortcut outcome: ``family`` is k+1 members pairwise more than 2d
    apart, which is by itself a valid d-limited k-max-distance sparsifier."""

    family: SetFamily


ExtensionOutcome = Found | NotFound | TrivialSparsifier

NOT_FOUND = NotFound()


@dataclass(frozen=True)
class OracleContext:
    """Framework parameters forwarded to extension queries.

    Adapters that can trade an exact answer for a trivial sparsifier (the
    min-cut adapter) need to know the caller's ``k``, distance cap ``d``,
    and cluster radius ``p``.  Adapters without such a shortcut ignore it.
    """

    k: int
    d: int
    p: int


class DomainOracle(ABC):
    """Behavior contract of an implicitly represented solution domain.

    Three capabilities, any of which may be declared unsupported by raising
    :class:`CapabilityError`:

    * ``opt_pm1(w)``: a domain member maximizing the +-1 weight sum, or
      ``None`` when the domain is empty.  Ties are broken by the adapter's
      documented deterministic internal order.
    * ``exact_extend(query, ctx)``: a member at exact distance ``radius``
      from ``center`` containing ``forced`` and avoiding ``forbidden``.
    * ``exact_empty_extend(r, forbidden, ctx)``: the special case with empty
      center and forced set, i.e. exact cardinality ``r``.

    Oracles are pure: identical inputs give identical outputs.
    """

    @property
    @abstractmethod
    def universe_size(self) -> int: ...

    def opt_pm1(self, weights: WeightVector) -> SubsetMask | None:
        raise CapabilityError(
            f"{type(self).__name__} does not offer the +-1 optimization capability"
        )

    @abstractmethod
    def exact_extend(
        self, query: ExtensionQuery, ctx: OracleContext | None = None
    ) -> ExtensionOutcome: ...

    def exact_empty_extend(
        self, r: int, forbidden: SubsetMask, ctx: OracleContext | None = None
    ) -> ExtensionOutcome:
        n = self.universe_size
        empty = SubsetMask.empty(n)
        return self.exact_extend(ExtensionQuery(empty, r, empty, forbidden), ctx)

    @property
    def complement_closed(self) -> bool:
        """Whether U \\ D is a member whenever D is (needed for the modified
        Hamming distance).  Conservative default: no."""
        return False


class CountingOracle(DomainOracle):
    """Pass-through wrapper that counts capability calls for reports."""

    def __init__(self, inner: DomainOracle) -> None:
        self._inner = inner
        self.calls_opt = 0
        self.calls_extend = 0

    @property
    def universe_size(self) -> int:
        return self._inner.universe_size

    def opt_pm1(self, weights: WeightVector) -> SubsetMask | None:
        self.calls_opt += 1
        return self._inner.opt_pm1(weights)

    def exact_extend(
        self, query: ExtensionQuery, ctx: OracleContext | None = None
    ) -> ExtensionOutcome:
        self.calls_extend += 1
        return self._inner.exact_extend(query, ctx)

    def exact_empty_extend(
        self, r: int, forbidden: SubsetMask, ctx: OracleContext | None = None
    ) -> ExtensionOutcome:
        self.calls_extend += 1
        return self._inner.exact_empty_extend(r, forbidden, ctx)

    @property
    def complement_closed(self) -> bool:
        return self._inner.complement_closed


@dataclass(frozen=True)
class SparsifierReport:
    """Sparsifier output plus the provenance needed to reproduce it."""

    family: SetFamily
    mode: str  # "small" | "limited"
    k: int
    r: int | None = None  # small mode: target ball radius
    ell: int | None = None  # small mode: max member cardinality
    d: int | None = None  # limited mode: distance cap
    p: int | None = None  # limited mode: cluster radius
    epsilon: float | None = None
    seed: int | None = None
    calls_opt: int = 0
    calls_extend: int = 0
    passes: int = 0
    #: an extension query surfaced a trivial sparsifier (min-cut shortcut)
    shortcut: bool = False
    #: the clustering phase found k+1 pairwise-far members and stopped
    scattered: bool = False
