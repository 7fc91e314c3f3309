"""Matroid base domains: graphic, uniform, and partition matroids.

Optimization is the classic greedy over descending weight (ties by element
index).  The exact extension first greedily builds the bases nearest to and
farthest from the center (among bases containing the forced set and
avoiding the forbidden one), then walks between them by single-element
exchanges; each step moves the center distance by -2, 0, or +2, so the
walk passes through every feasible even distance.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

from ..core import (
    DomainOracle,
    ExtensionOutcome,
    ExtensionQuery,
    Found,
    NOT_FOUND,
    OracleContext,
    SubsetMask,
    WeightVector,
)
from .graphs import GraphData


class Matroid(ABC):
    """Independence system with a rank; supplies independence tests only."""

    universe_size: int
    rank: int

    @abstractmethod
    def independent_bits(self, bits: int) -> bool: ...

    def is_base_bits(self, bits: int) -> bool:
        return bits.bit_count() == self.rank and self.independent_bits(bits)


class GraphicMatroid(Matroid):
    """Edge sets of forests; bases are spanning forests."""

    def __init__(self, graph: GraphData) -> None:
        if graph.directed:
            raise ValueError("graphic matroids are defined on undirected graphs")
        if graph.n_edges < 1:
            raise ValueError("graphic matroid needs at least one edge")
        self.graph = graph
        self.universe_size = graph.n_edges
        self.rank = graph.n_vertices - self._component_count((1 << graph.n_edges) - 1)

    def _component_count(self, edge_bits: int) -> int:
        parent = list(range(self.graph.n_vertices))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        comps = self.graph.n_vertices
        bits = edge_bits
        while bits:
            low = bits & -bits
            bits ^= low
            u, v = self.graph.edges[low.bit_length() - 1]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        return comps

    def independent_bits(self, bits: int) -> bool:
        # a forest: adding each edge must join two components
        return (
            self.graph.n_vertices - self._component_count(bits) == bits.bit_count()
        )


class UniformMatroid(Matroid):
    """All subsets of size at most rank are independent."""

    def __init__(self, universe_size: int, rank: int) -> None:
        if not 0 <= rank <= universe_size:
            raise ValueError("rank must be between 0 and the universe size")
        self.universe_size = universe_size
        self.rank = rank

    def independent_bits(self, bits: int) -> bool:
        return bits.bit_count() <= self.rank


class PartitionMatroid(Matroid):
    """Per-block capacities; elements outside every block are unconstrained."""

    def __init__(
        self, universe_size: int, blocks: list[tuple[int, tuple[int, ...]]]
    ) -> None:
        self.universe_size = universe_size
        self._block_bits: list[int] = []
        self._caps: list[int] = []
        covered = 0
        for cap, elems in blocks:
            if cap < 0:
                raise ValueError("block capacity must be nonnegative")
            bits = 0
            for e in elems:
                if not 0 <= e < universe_size:
                    raise ValueError(f"block element {e} out of range")
                bits |= 1 << e
            if bits & covered:
                raise ValueError("partition blocks must be disjoint")
            covered |= bits
            self._block_bits.append(bits)
            self._caps.append(cap)
        free = universe_size - covered.bit_count()
        self.rank = free + sum(
            min(cap, bits.bit_count())
            for cap, bits in zip(self._caps, self._block_bits)
        )

    def independent_bits(self, bits: int) -> bool:
        return all(
            (bits & block).bit_count() <= cap
            for cap, block in zip(self._caps, self._block_bits)
        )


class MatroidBaseOracle(DomainOracle):
    def __init__(self, matroid: Matroid) -> None:
        self._m = matroid

    @property
    def universe_size(self) -> int:
        return self._m.universe_size

    @property
    def matroid(self) -> Matroid:
        return self._m

    @property
    def size_bound(self) -> int:
        return self._m.rank

    def is_member_bits(self, bits: int) -> bool:
        return self._m.is_base_bits(bits)

    def opt_pm1(self, weights: WeightVector) -> SubsetMask | None:
        order = sorted(range(self.universe_size), key=lambda e: (-weights.weights[e], e))
        base = 0
        for e in order:
            cand = base | (1 << e)
            if self._m.independent_bits(cand):
                base = cand
        assert base.bit_count() == self._m.rank, "matroid rank not reached by greedy"
        return SubsetMask(self.universe_size, base)

    def _greedy_base(self, forced: int, blocked: int, prefer: int) -> int | None:
        """Greedy base containing ``forced``, avoiding ``blocked``, taking
        ``prefer`` elements first (then the rest), all in index order."""
        full = (1 << self.universe_size) - 1
        base = 0
        for e in _iter_bits(forced):
            cand = base | (1 << e)
            if not self._m.independent_bits(cand):
                return None
            base = cand
        open_pool = full & ~forced & ~blocked
        for pool in (open_pool & prefer, open_pool & ~prefer):
            for e in _iter_bits(pool):
                cand = base | (1 << e)
                if self._m.independent_bits(cand):
                    base = cand
        return base if base.bit_count() == self._m.rank else None

    def exact_extend(
        self, query: ExtensionQuery, ctx: OracleContext | None = None
    ) -> ExtensionOutcome:
        c = query.center.bits
        x = query.forced.bits
        y = query.forbidden.bits
        r = query.radius
        # |D ^ C| = rank + |C| - 2 |D & C| pins the distance parity; the
        # center need not be a base itself (empty-center queries are not)
        if (r + self._m.rank + c.bit_count()) % 2 == 1:
            return NOT_FOUND
        d_min = self._greedy_base(x, y, prefer=c)
        if d_min is None:
            return NOT_FOUND
        d_max = self._greedy_base(x, y, prefer=~c)
        assert d_max is not None
        lo = (d_min ^ c).bit_count()
        hi = (d_max ^ c).bit_count()
        if not lo <= r <= hi:
            return NOT_FOUND
        current = d_min
        while (current ^ c).bit_count() != r:
            moved = self._exchange_step(current, d_max)
            assert moved is not None, "exchange walk stalled before reaching r"
            before = (current ^ c).bit_count()
            current = moved
            after = (current ^ c).bit_count()
            assert after - before in (-2, 0, 2)
        assert query.admits_bits(current)
        return Found(SubsetMask(self.universe_size, current))

    def _exchange_step(self, d1: int, d2: int) -> int | None:
        """One strong-exchange move of d1 toward d2 (lowest-index choices)."""
        only1 = d1 & ~d2
        if only1 == 0:
            return None
        e1 = (only1 & -only1).bit_length() - 1
        stripped = d1 & ~(1 << e1)
        for e2 in _iter_bits(d2 & ~d1):
            cand = stripped | (1 << e2)
            if self._m.independent_bits(cand):
                return cand
        raise AssertionError("strong exchange property violated")


def _iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def matroid_base_oracle(matroid: Matroid) -> MatroidBaseOracle:
    return MatroidBaseOracle(matroid)
