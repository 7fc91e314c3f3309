"""Shared test utilities: deterministic instance generators and answer
certification against enumerated domains."""

from __future__ import annotations

import random

from divsparse import ProblemSpec, SetFamily, SolveAnswer, SubsetMask
from divsparse.bruteforce import enumerate_domain
from divsparse.domains import GraphData
from divsparse.instances import (
    DomainInstance,
    dag_dp_instance,
    explicit_instance,
    matching_instance,
    partition_matroid_instance,
    spanning_tree_instance,
    st_mincut_instance,
    uniform_matroid_instance,
    vertex_cover_instance,
)

ADAPTER_KINDS = (
    "explicit",
    "vertex_cover",
    "spanning_tree",
    "uniform_matroid",
    "partition_matroid",
    "matching",
    "st_mincut",
    "dag_dp",
)


def random_family(
    rng: random.Random,
    n: int,
    max_members: int,
    max_size: int | None = None,
    nonempty: bool = True,
) -> SetFamily:
    count = rng.randint(1 if nonempty else 0, max_members)
    seen: set[int] = set()
    members: list[int] = []
    attempts = 0
    while len(members) < count and attempts < 50 * max_members + 50:
        attempts += 1
        bits = rng.getrandbits(n)
        if max_size is not None and bits.bit_count() > max_size:
            continue
        if bits in seen:
            continue
        seen.add(bits)
        members.append(bits)
    return SetFamily.from_bits(n, members)


def complement_closed_family(rng: random.Random, n: int, max_members: int) -> SetFamily:
    base = random_family(rng, n, max_members // 2 + 1)
    full = (1 << n) - 1
    bits: list[int] = []
    seen: set[int] = set()
    for b in base.bits_list():
        for candidate in (b, b ^ full):
            if candidate not in seen:
                seen.add(candidate)
                bits.append(candidate)
    return SetFamily.from_bits(n, bits)


def random_undirected_graph(
    rng: random.Random, nv: int, n_edges: int
) -> GraphData:
    pairs = [(u, v) for u in range(nv) for v in range(u + 1, nv)]
    rng.shuffle(pairs)
    chosen = pairs[: min(n_edges, len(pairs))]
    if not chosen:
        chosen = [(0, 1)]
    return GraphData(directed=False, n_vertices=nv, edges=tuple(chosen))


def random_digraph(rng: random.Random, nv: int, n_edges: int) -> GraphData:
    pairs = [(u, v) for u in range(nv) for v in range(nv) if u != v]
    rng.shuffle(pairs)
    chosen = pairs[: min(n_edges, len(pairs))]
    if not chosen:
        chosen = [(0, 1)]
    return GraphData(directed=True, n_vertices=nv, edges=tuple(chosen))


def random_dag(rng: random.Random, nv: int, n_edges: int) -> GraphData:
    order = list(range(nv))
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    pairs = [
        (u, v) for u in range(nv) for v in range(nv)
        if u != v and rank[u] < rank[v]
    ]
    rng.shuffle(pairs)
    chosen = pairs[: min(n_edges, len(pairs))]
    return GraphData(directed=True, n_vertices=nv, edges=tuple(chosen))


def _attempt_instance(kind: str, rng: random.Random) -> DomainInstance:
    if kind == "explicit":
        n = rng.randint(3, 7)
        return explicit_instance(random_family(rng, n, 12))
    if kind == "vertex_cover":
        nv = rng.randint(3, 5)
        graph = random_undirected_graph(rng, nv, rng.randint(2, nv + 1))
        return vertex_cover_instance(graph, rng.randint(1, 3))
    if kind == "spanning_tree":
        nv = rng.randint(3, 5)
        graph = random_undirected_graph(rng, nv, rng.randint(nv - 1, nv + 1))
        return spanning_tree_instance(graph)
    if kind == "uniform_matroid":
        n = rng.randint(3, 6)
        return uniform_matroid_instance(n, rng.randint(1, min(3, n)))
    if kind == "partition_matroid":
        n = rng.randint(4, 6)
        split = rng.randint(1, n - 1)
        blocks = [
            (rng.randint(1, 2), tuple(range(split))),
            (rng.randint(1, 2), tuple(range(split, n))),
        ]
        return partition_matroid_instance(n, blocks)
    if kind == "matching":
        nv = rng.randint(4, 6)
        graph = random_undirected_graph(rng, nv, rng.randint(3, 6))
        return matching_instance(graph, rng.randint(1, 2))
    if kind == "st_mincut":
        nv = rng.randint(3, 5)
        graph = random_digraph(rng, nv, rng.randint(nv, 2 * nv))
        return st_mincut_instance(graph, 0, nv - 1)
    if kind == "dag_dp":
        nv = rng.randint(3, 6)
        graph = random_dag(rng, nv, rng.randint(2, nv + 2))
        universe = rng.randint(2, min(6, nv + 1))
        labels = tuple(rng.randrange(universe) for _ in range(nv))
        return dag_dp_instance(universe, graph, labels)
    raise ValueError(f"unknown kind {kind!r}")


_KIND_OFFSET = {kind: i for i, kind in enumerate(ADAPTER_KINDS)}


def generate_instance(
    kind: str, seed: int, max_domain: int, min_domain: int = 1
) -> tuple[DomainInstance, SetFamily]:
    """Deterministic instance of one adapter with a bounded domain size.

    Rejection-samples until enumerate_domain lands in the requested range.
    Seeds are pure integers so results do not depend on hash randomization.
    """
    for attempt in range(200):
        rng = random.Random(seed * 100_000 + _KIND_OFFSET[kind] * 1_000 + attempt)
        try:
            instance = _attempt_instance(kind, rng)
            domain = enumerate_domain(instance)
        except ValueError:
            continue  # e.g. a DAG labeling that repeats along a path
        if min_domain <= len(domain) <= max_domain:
            return instance, domain
    raise AssertionError(f"no viable {kind} instance for seed {seed}")


def certify_answer(
    domain: SetFamily, spec: ProblemSpec, answer: SolveAnswer
) -> None:
    """Re-check a feasible answer against the problem statement."""
    if not answer.feasible:
        return
    n = domain.universe_size

    def dist(a: SubsetMask, b: SubsetMask) -> int:
        plain = (a.bits ^ b.bits).bit_count()
        return min(plain, n - plain) if spec.modified else plain

    assert len(answer.witnesses) == spec.k
    for w in answer.witnesses:
        assert domain.contains_bits(w.bits), "witness outside the domain"
    pairs = [
        dist(answer.witnesses[i], answer.witnesses[j])
        for i in range(spec.k)
        for j in range(i + 1, spec.k)
    ]
    if spec.problem == "maxmin":
        assert all(v >= spec.d for v in pairs)
    elif spec.problem == "maxsum":
        assert sum(pairs) >= spec.d
    else:
        assert answer.radii is not None and len(answer.radii) == spec.k
        if spec.problem == "kcenter":
            assert all(r <= spec.d for r in answer.radii)
        else:
            assert sum(answer.radii) <= spec.d
        for member in domain:
            assert any(
                dist(member, c) <= r
                for c, r in zip(answer.witnesses, answer.radii)
            ), "a domain member is not covered"
