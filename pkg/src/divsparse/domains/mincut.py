"""Vertex sets of minimum s,t-cuts.

The domain is the family of vertex sets C with s in C, t not in C,
minimizing the number of arcs leaving C (undirected edges count once,
realized as two antiparallel unit arcs).  After one max-flow run, the
strongly connected components of the residual graph form a poset whose
ideals are in bijection with the minimum cuts: a cut is the fixed base
block (everything residual-reachable from s) plus the blocks of a
downward-closed node set.

Optimization routes +-1 vertex weights through a gadget: original arcs get
a weight large enough to dominate, +1 vertices hang off the source and -1
vertices feed the sink with unit arcs, and the minimum-weight cut of the
gadget maximizes the vertex weight among minimum cuts.  Ties resolve to
the unique minimal optimum (the residual-reachable side of the source).

The exact extension brute-forces ideals inside a sandwich around the
center's ideal.  When the sandwich is too wide, a topological chain of
cuts spaced more than 2d apart is returned as a trivial sparsifier
instead; the framework context supplies k and d.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core import (
    CapabilityError,
    DomainOracle,
    ExtensionOutcome,
    ExtensionQuery,
    Found,
    NOT_FOUND,
    OracleContext,
    SetFamily,
    SubsetMask,
    TrivialSparsifier,
    WeightVector,
)
from .graphs import GraphData


def _max_flow(n: int, arcs: list[tuple[int, int, int]], s: int, t: int):
    """Edmonds-Karp.  Returns (flow value, to, cap, head arrays) where the
    arc arrays encode the final residual network (arc 2i pairs with 2i+1)."""
    to: list[int] = []
    cap: list[int] = []
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v, c in arcs:
        adj[u].append(len(to))
        to.append(v)
        cap.append(c)
        adj[v].append(len(to))
        to.append(u)
        cap.append(0)

    flow = 0
    while True:
        parent_arc = [-1] * n
        parent_arc[s] = -2
        queue = [s]
        qi = 0
        while qi < len(queue) and parent_arc[t] == -1:
            u = queue[qi]
            qi += 1
            for idx in adj[u]:
                v = to[idx]
                if cap[idx] > 0 and parent_arc[v] == -1:
                    parent_arc[v] = idx
                    queue.append(v)
        if parent_arc[t] == -1:
            break
        # trace the path, find the bottleneck, push
        bottleneck = None
        v = t
        while v != s:
            idx = parent_arc[v]
            if bottleneck is None or cap[idx] < bottleneck:
                bottleneck = cap[idx]
            v = to[idx ^ 1]
        v = t
        while v != s:
            idx = parent_arc[v]
            cap[idx] -= bottleneck
            cap[idx ^ 1] += bottleneck
            v = to[idx ^ 1]
        flow += bottleneck
    return flow, to, cap, adj


def _residual_reachable(n: int, to, cap, adj, start: int, reverse: bool) -> int:
    seen = 1 << start
    queue = [start]
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        for idx in adj[u]:
            if reverse:
                # traverse arcs into u with residual capacity: the paired
                # arc idx^1 runs to[idx] -> u and has capacity cap[idx^1]
                v = to[idx]
                has = cap[idx ^ 1] > 0
            else:
                v = to[idx]
                has = cap[idx] > 0
            if has and not seen >> v & 1:
                seen |= 1 << v
                queue.append(v)
    return seen


@dataclass(frozen=True)
class MinCutPoset:
    """Ideal <-> minimum-cut correspondence.

    ``base_bits`` are the vertices in every minimum cut (the canonical
    minimal cut, corresponding to the empty ideal).  ``node_blocks`` are
    the remaining residual components; ``pred_masks[w]``/``succ_masks[w]``
    are the node sets {u : u <= w} / {u : u >= w} including w itself.  A
    cut is ``base_bits`` plus the blocks of any downward-closed node set.
    """

    universe_size: int
    cut_value: int
    base_bits: int
    node_blocks: tuple[int, ...]
    pred_masks: tuple[int, ...]
    succ_masks: tuple[int, ...]

    def __post_init__(self) -> None:
        m = len(self.node_blocks)
        for w in range(m):
            # reflexive, antisymmetric, transitive by construction; verify
            assert self.pred_masks[w] >> w & 1 and self.succ_masks[w] >> w & 1
            for u in range(m):
                below = bool(self.pred_masks[w] >> u & 1)
                above = bool(self.succ_masks[u] >> w & 1)
                assert below == above
                if below and w != u:
                    assert not self.pred_masks[u] >> w & 1, "order not antisymmetric"
                    assert (
                        self.pred_masks[u] & ~self.pred_masks[w] == 0
                    ), "order not transitive"

    @property
    def n_nodes(self) -> int:
        return len(self.node_blocks)

    def is_ideal(self, node_set: int) -> bool:
        rest = node_set
        while rest:
            low = rest & -rest
            rest ^= low
            w = low.bit_length() - 1
            if self.pred_masks[w] & ~node_set:
                return False
        return True

    def cut_bits(self, node_set: int) -> int:
        out = self.base_bits
        rest = node_set
        while rest:
            low = rest & -rest
            rest ^= low
            out |= self.node_blocks[low.bit_length() - 1]
        return out

    def ideal_bits(self, cut: int) -> int | None:
        """The ideal whose cut is ``cut``, or None if there is none."""
        if cut & self.base_bits != self.base_bits:
            return None
        rest = cut & ~self.base_bits
        node_set = 0
        for w, block in enumerate(self.node_blocks):
            if block & rest == block:
                node_set |= 1 << w
                rest &= ~block
            elif block & rest:
                return None  # block straddles the candidate cut
        if rest:
            return None  # leftover vertices outside every block
        if not self.is_ideal(node_set):
            return None
        return node_set

    def all_ideals(self) -> list[int]:
        """Every ideal, ascending as node bitmasks (guarded, test use)."""
        m = self.n_nodes
        if m > 20:
            raise CapabilityError(f"refusing to enumerate ideals of {m} nodes")
        return [i for i in range(1 << m) if self.is_ideal(i)]


def build_mincut_poset(graph: GraphData, s: int, t: int) -> MinCutPoset:
    n = graph.n_vertices
    if not (0 <= s < n and 0 <= t < n) or s == t:
        raise ValueError("need distinct in-range source and sink")
    arcs = [(u, v, 1) for u, v in graph.arcs()]
    flow, to, cap, adj = _max_flow(n, arcs, s, t)

    forced_in = _residual_reachable(n, to, cap, adj, s, reverse=False)
    forced_out = _residual_reachable(n, to, cap, adj, t, reverse=True)
    assert not forced_in & forced_out, "source side reaches the sink residually"

    free = [v for v in range(n) if not (forced_in | forced_out) >> v & 1]
    # residual SCCs among the free vertices, via double reachability
    reach = {}
    for v in free:
        reach[v] = _residual_reachable(n, to, cap, adj, v, reverse=False)
    blocks: list[int] = []
    assigned = 0
    for v in free:
        if assigned >> v & 1:
            continue
        members = 0
        for u in free:
            if reach[v] >> u & 1 and reach[u] >> v & 1:
                members |= 1 << u
        blocks.append(members)
        assigned |= members
    m = len(blocks)
    # u <= w iff w residual-reaches u: a cut closed under residual arcs may
    # take a node only together with everything that node reaches, so cuts
    # are exactly the downward-closed node sets of this order
    pred = [1 << w for w in range(m)]
    for w in range(m):
        rep_w = (blocks[w] & -blocks[w]).bit_length() - 1
        for u in range(m):
            if u == w:
                continue
            rep_u = (blocks[u] & -blocks[u]).bit_length() - 1
            if reach[rep_w] >> rep_u & 1:
                pred[w] |= 1 << u
    succ = [1 << w for w in range(m)]
    for w in range(m):
        for u in range(m):
            if pred[w] >> u & 1:
                succ[u] |= 1 << w
    return MinCutPoset(
        universe_size=n,
        cut_value=flow,
        base_bits=forced_in,
        node_blocks=tuple(blocks),
        pred_masks=tuple(pred),
        succ_masks=tuple(succ),
    )


#: Without framework context the sandwich must stay brute-forceable.
SANDWICH_GUARD = 26


class MinCutOracle(DomainOracle):
    def __init__(self, graph: GraphData, s: int, t: int) -> None:
        self._graph = graph
        self._s = s
        self._t = t
        self._poset = build_mincut_poset(graph, s, t)
        self._arcs = graph.arcs()

    @property
    def universe_size(self) -> int:
        return self._graph.n_vertices

    @property
    def poset(self) -> MinCutPoset:
        return self._poset

    @property
    def cut_value(self) -> int:
        return self._poset.cut_value

    def crossing_arcs_bits(self, cut: int) -> int:
        return sum(1 for u, v in self._arcs if cut >> u & 1 and not cut >> v & 1)

    def is_member_bits(self, bits: int) -> bool:
        if not bits >> self._s & 1 or bits >> self._t & 1:
            return False
        return self.crossing_arcs_bits(bits) == self._poset.cut_value

    def opt_pm1(self, weights: WeightVector) -> SubsetMask | None:
        n = self._graph.n_vertices
        heavy = 2 * n + 1
        arcs = [(u, v, heavy) for u, v in self._arcs]
        for v in range(n):
            if v in (self._s, self._t):
                continue
            if weights.weights[v] == 1:
                arcs.append((self._s, v, 1))
            else:
                arcs.append((v, self._t, 1))
        _, to, cap, adj = _max_flow(n, arcs, self._s, self._t)
        cut = _residual_reachable(n, to, cap, adj, self._s, reverse=False)
        assert self.is_member_bits(cut)
        return SubsetMask(n, cut)

    def _sandwich(self, ideal: int, p_eff: int) -> tuple[list[int], list[int]]:
        """Poset nodes addable to / removable from ``ideal`` within p_eff
        blocks, in topological order (by predecessor count, then index)."""
        poset = self._poset
        up = [
            w
            for w in range(poset.n_nodes)
            if not ideal >> w & 1
            and (poset.pred_masks[w] & ~ideal).bit_count() <= p_eff
        ]
        down = [
            w
            for w in range(poset.n_nodes)
            if ideal >> w & 1
            and (poset.succ_masks[w] & ideal).bit_count() <= p_eff
        ]
        def key(w: int) -> tuple[int, int]:
            return (poset.pred_masks[w].bit_count(), w)

        return sorted(up, key=key), sorted(down, key=key)

    def _chain_family(
        self, ideal: int, nodes: list[int], k: int, d: int, upward: bool
    ) -> SetFamily:
        """k+1 cuts spaced more than 2d apart along a topological chain.

        Upward chains add prefixes of addable nodes; downward chains remove
        suffixes of removable nodes.  Strides of 2d+1 blocks keep pairwise
        distances strictly above 2d (every block holds >= 1 vertex).
        """
        poset = self._poset
        stride = 2 * d + 1
        cuts = []
        for i in range(k + 1):
            node_set = ideal
            if upward:
                for w in nodes[: i * stride]:
                    node_set |= 1 << w
            else:
                taken = nodes[len(nodes) - i * stride :]
                for w in taken:
                    node_set &= ~(1 << w)
            assert poset.is_ideal(node_set), "chain prefix is not an ideal"
            cuts.append(poset.cut_bits(node_set))
        for i in range(len(cuts)):
            for j in range(i + 1, len(cuts)):
                assert (cuts[i] ^ cuts[j]).bit_count() > 2 * d
        return SetFamily.from_bits(self.universe_size, cuts)

    def exact_extend(
        self, query: ExtensionQuery, ctx: OracleContext | None = None
    ) -> ExtensionOutcome:
        poset = self._poset
        ideal = poset.ideal_bits(query.center.bits)
        if ideal is None:
            raise ValueError("extension center is not a minimum s,t-cut")
        p_eff = query.radius if ctx is None else max(ctx.p, query.radius)
        up, down = self._sandwich(ideal, p_eff)
        if ctx is not None:
            limit = ctx.k * (2 * ctx.d + 1)
            if len(up) > limit:
                return TrivialSparsifier(
                    self._chain_family(ideal, up, ctx.k, ctx.d, upward=True)
                )
            if len(down) > limit:
                return TrivialSparsifier(
                    self._chain_family(ideal, down, ctx.k, ctx.d, upward=False)
                )
        elif len(up) + len(down) > SANDWICH_GUARD:
            raise CapabilityError(
                "extension sandwich too wide without framework context"
            )
        for sub_down in range(1 << len(down)):
            removed = 0
            for j in range(len(down)):
                if sub_down >> j & 1:
                    removed |= 1 << down[j]
            base_ideal = ideal & ~removed
            for sub_up in range(1 << len(up)):
                added = 0
                for j in range(len(up)):
                    if sub_up >> j & 1:
                        added |= 1 << up[j]
                cand = base_ideal | added
                if not poset.is_ideal(cand):
                    continue
                cut = poset.cut_bits(cand)
                if query.admits_bits(cut):
                    return Found(SubsetMask(self.universe_size, cut))
        return NOT_FOUND


def mincut_oracle(graph: GraphData, s: int, t: int) -> MinCutOracle:
    return MinCutOracle(graph, s, t)
