"""Minimum s,t-cut adapter: ideal lattice, gadget, sandwich, shortcut."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from divsparse import (
    ExtensionQuery,
    Found,
    OracleContext,
    SubsetMask,
    TrivialSparsifier,
    WeightVector,
)
from divsparse.bruteforce import enumerate_domain
from divsparse.domains import GraphData, mincut_oracle
from divsparse.instances import st_mincut_instance

from helpers import random_digraph

from test_domains import all_weight_vectors, extension_queries


def diamond() -> GraphData:
    return GraphData(
        directed=True, n_vertices=4, edges=((0, 1), (0, 2), (1, 3), (2, 3))
    )


def brute_min_cuts(graph: GraphData, s: int, t: int) -> list[int]:
    arcs = graph.arcs()
    n = graph.n_vertices

    def crossing(cut: int) -> int:
        return sum(1 for u, v in arcs if cut >> u & 1 and not cut >> v & 1)

    candidates = [
        c for c in range(1 << n) if c >> s & 1 and not c >> t & 1
    ]
    best = min(crossing(c) for c in candidates)
    return sorted(c for c in candidates if crossing(c) == best)


class TestDiamond:
    def test_enumeration(self):
        instance = st_mincut_instance(diamond(), 0, 3)
        got = sorted(enumerate_domain(instance).bits_list())
        assert got == [0b0001, 0b0011, 0b0101, 0b0111]

    def test_opt(self):
        oracle = mincut_oracle(diamond(), 0, 3)
        got = oracle.opt_pm1(WeightVector(4, (-1, 1, 1, -1)))
        assert got is not None and got.bits == 0b0111

    def test_extension(self):
        oracle = mincut_oracle(diamond(), 0, 3)
        q = ExtensionQuery(
            SubsetMask(4, 0b0001), 1, SubsetMask(4, 0b0010), SubsetMask.empty(4)
        )
        got = oracle.exact_extend(q)
        assert isinstance(got, Found) and got.witness.bits == 0b0011


class TestPosetBijection:
    def test_fifty_random_digraphs(self):
        rng = random.Random(1)
        done = 0
        while done < 50:
            nv = rng.randint(3, 8)
            graph = random_digraph(rng, nv, rng.randint(nv, 3 * nv))
            s, t = 0, nv - 1
            oracle = mincut_oracle(graph, s, t)
            ideals = oracle.poset.all_ideals()
            cuts = sorted(oracle.poset.cut_bits(i) for i in ideals)
            assert len(set(cuts)) == len(cuts), "ideal map is not injective"
            assert cuts == brute_min_cuts(graph, s, t)
            for cut in cuts:
                ideal = oracle.poset.ideal_bits(cut)
                assert ideal is not None and oracle.poset.cut_bits(ideal) == cut
            done += 1

    def test_unreachable_sink_is_uniform(self):
        graph = GraphData(directed=True, n_vertices=3, edges=((2, 0),))
        oracle = mincut_oracle(graph, 0, 2)
        assert oracle.cut_value == 0
        cuts = sorted(oracle.poset.cut_bits(i) for i in oracle.poset.all_ideals())
        assert cuts == brute_min_cuts(graph, 0, 2)

    def test_undirected_edges_count_once(self):
        graph = GraphData(directed=False, n_vertices=3, edges=((0, 1), (1, 2)))
        oracle = mincut_oracle(graph, 0, 2)
        assert oracle.cut_value == 1
        cuts = sorted(oracle.poset.cut_bits(i) for i in oracle.poset.all_ideals())
        assert cuts == brute_min_cuts(graph, 0, 2)


class TestEquivalence:
    def test_matches_brute_with_context(self):
        rng = random.Random(9)
        for _ in range(8):
            nv = rng.randint(3, 5)
            graph = random_digraph(rng, nv, rng.randint(nv, 2 * nv))
            instance = st_mincut_instance(graph, 0, nv - 1)
            domain = enumerate_domain(instance)
            oracle = instance.oracle()
            ctx = OracleContext(k=2, d=nv, p=nv)  # wide enough: no shortcut
            from divsparse.bruteforce import brute_oracles

            reference = brute_oracles(domain)
            for w in all_weight_vectors(nv):
                got = oracle.opt_pm1(w)
                want = reference.opt_pm1(w)
                assert got is not None and want is not None
                assert w.weight_of(got) == w.weight_of(want)
            for query in extension_queries(nv, domain, 2):
                got = oracle.exact_extend(query, ctx)
                want = reference.exact_extend(query)
                assert isinstance(got, Found) == isinstance(want, Found)
                if isinstance(got, Found):
                    assert query.admits_bits(got.witness.bits)
                    assert domain.contains_bits(got.witness.bits)


def path_graph(length: int) -> GraphData:
    edges = tuple((i, i + 1) for i in range(length))
    return GraphData(directed=True, n_vertices=length + 1, edges=edges)


class TestTrivialShortcut:
    @pytest.mark.parametrize("k,d", [(1, 0), (1, 1), (2, 1), (2, 2), (3, 1)])
    def test_chain_fires_and_is_scattered(self, k, d):
        # a long path gives a chain poset wider than k (2d + 1)
        length = k * (2 * d + 1) + 2
        oracle = mincut_oracle(path_graph(length), 0, length)
        center = SubsetMask(length + 1, 0b1)  # the minimal cut {s}
        ctx = OracleContext(k=k, d=d, p=length + 1)
        q = ExtensionQuery(
            center, 2, SubsetMask.empty(length + 1), SubsetMask.empty(length + 1)
        )
        got = oracle.exact_extend(q, ctx)
        assert isinstance(got, TrivialSparsifier)
        family = got.family
        assert len(family) == k + 1
        for a, b in combinations(family, 2):
            assert (a.bits ^ b.bits).bit_count() > 2 * d
        domain = enumerate_domain(st_mincut_instance(path_graph(length), 0, length))
        for member in family:
            assert domain.contains_bits(member.bits)

    def test_downward_chain(self):
        # center near the top of the chain: the removable side is the wide one
        k, d = 2, 1
        length = k * (2 * d + 1) + 2
        oracle = mincut_oracle(path_graph(length), 0, length)
        center = SubsetMask(length + 1, (1 << length) - 1)  # all but t
        ctx = OracleContext(k=k, d=d, p=length + 1)
        q = ExtensionQuery(
            center, 2, SubsetMask.empty(length + 1), SubsetMask.empty(length + 1)
        )
        got = oracle.exact_extend(q, ctx)
        assert isinstance(got, TrivialSparsifier)
        assert len(got.family) == k + 1
        for a, b in combinations(got.family, 2):
            assert (a.bits ^ b.bits).bit_count() > 2 * d

    def test_no_context_narrow_sandwich_still_answers(self):
        oracle = mincut_oracle(diamond(), 0, 3)
        q = ExtensionQuery(
            SubsetMask(4, 0b0001), 2, SubsetMask.empty(4), SubsetMask.empty(4)
        )
        got = oracle.exact_extend(q)  # no context: plain sandwich search
        assert isinstance(got, Found)
        assert got.witness.bits == 0b0111

    def test_center_not_in_domain_rejected(self):
        oracle = mincut_oracle(diamond(), 0, 3)
        q = ExtensionQuery(
            SubsetMask(4, 0b0010), 1, SubsetMask.empty(4), SubsetMask.empty(4)
        )
        with pytest.raises(ValueError):
            oracle.exact_extend(q)
