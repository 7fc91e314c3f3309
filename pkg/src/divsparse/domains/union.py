"""Union of several domains over one ground set.

Optimization takes the best answer over the parts; extension queries take
the first witness in part order.  A trivial sparsifier surfaced by a part
stays valid for the union (its members belong to the union and keep their
pairwise distances), so it is re-validated and propagated.
"""

from __future__ import annotations

from typing import Sequence

from ..core import (
    DomainOracle,
    ExtensionOutcome,
    ExtensionQuery,
    Found,
    NOT_FOUND,
    OracleContext,
    SubsetMask,
    TrivialSparsifier,
    WeightVector,
)


class UnionOracle(DomainOracle):
    def __init__(self, parts: Sequence[DomainOracle]) -> None:
        if not parts:
            raise ValueError("a union needs at least one part")
        sizes = {p.universe_size for p in parts}
        if len(sizes) != 1:
            raise ValueError("union parts must share one ground set")
        self._parts = list(parts)

    @property
    def universe_size(self) -> int:
        return self._parts[0].universe_size

    @property
    def parts(self) -> list[DomainOracle]:
        return list(self._parts)

    def opt_pm1(self, weights: WeightVector) -> SubsetMask | None:
        best = None
        best_weight = None
        for part in self._parts:
            got = part.opt_pm1(weights)
            if got is None:
                continue
            w = weights.weight_of(got)
            if best_weight is None or w > best_weight:
                best_weight = w
                best = got
        return best

    @staticmethod
    def _validated(out: TrivialSparsifier, ctx: OracleContext | None) -> TrivialSparsifier:
        if ctx is not None:
            bits = out.family.bits_list()
            assert len(bits) == ctx.k + 1
            for i in range(len(bits)):
                for j in range(i + 1, len(bits)):
                    assert (bits[i] ^ bits[j]).bit_count() > 2 * ctx.d
        return out

    def exact_extend(
        self, query: ExtensionQuery, ctx: OracleContext | None = None
    ) -> ExtensionOutcome:
        for part in self._parts:
            out = part.exact_extend(query, ctx)
            if isinstance(out, Found):
                return out
            if isinstance(out, TrivialSparsifier):
                return self._validated(out, ctx)
        return NOT_FOUND

    def exact_empty_extend(
        self, r: int, forbidden: SubsetMask, ctx: OracleContext | None = None
    ) -> ExtensionOutcome:
        for part in self._parts:
            out = part.exact_empty_extend(r, forbidden, ctx)
            if isinstance(out, Found):
                return out
            if isinstance(out, TrivialSparsifier):
                return self._validated(out, ctx)
        return NOT_FOUND

    @property
    def complement_closed(self) -> bool:
        return all(p.complement_closed for p in self._parts)


def union_oracle(parts: Sequence[DomainOracle]) -> UnionOracle:
    return UnionOracle(parts)
