import json

import pytest
from hypothesis import given, settings, strategies as st

from helpers import complete, cycle, path
from phcakernel.errors import ContractError
from phcakernel.graph import Graph, connected_components
from phcakernel.partition import (
    CliquePartition,
    nice_clique_partition,
    partition_components,
    restrict_partition,
    verify_partition,
)
from phcakernel.verification import GeneratorSpec, gen_phca


def test_p4_partition_verifies():
    G = path(4)
    P = nice_clique_partition(G)
    assert verify_partition(G, P)
    assert not P.circular
    assert P.cliques in (((0, 1), (2, 3)), ((0,), (1, 2), (3,)))


def test_k5_is_one_clique():
    P = nice_clique_partition(complete(5))
    assert P.t == 1 and sorted(P.cliques[0]) == list(range(5))


def test_c6_partition():
    G = cycle(6)
    P = nice_clique_partition(G)
    assert P.circular and verify_partition(G, P)
    assert sorted(len(Q) for Q in P.cliques) in ([1] * 6, [2, 2, 2])


def test_c4_needs_three_cliques():
    G = cycle(4)
    P = nice_clique_partition(G)
    assert P.t >= 3 and verify_partition(G, P)


def test_verify_rejects_bad_partitions():
    G = path(4)
    assert verify_partition(G, CliquePartition(0, ((0, 1), (2, 3)), False))
    assert not verify_partition(G, CliquePartition(0, ((0, 2), (1, 3)), False))
    assert verify_partition(G, CliquePartition(0, ((0,), (1,), (2, 3)), False))
    skip = Graph(range(4), [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert not verify_partition(skip, CliquePartition(0, ((0,), (1,), (2,), (3,)), False))


def test_verify_rejects_edge_skipping_two_cliques():
    G = Graph(range(4), [(0, 1), (1, 2), (2, 3), (0, 2)])
    assert not verify_partition(G, CliquePartition(0, ((0,), (1,), (2,), (3,)), False))


def test_verify_checks_umbrella_order():
    # 0 sees only the second vertex of the next clique
    G = Graph(range(3), [(0, 2), (1, 2)])
    assert not verify_partition(G, CliquePartition(0, ((0,), (1, 2)), False))
    assert verify_partition(G, CliquePartition(0, ((0,), (2, 1)), False))


def test_non_phca_rejected():
    claw = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(ContractError):
        nice_clique_partition(claw)


def test_json_round_trip():
    P = nice_clique_partition(cycle(7))
    text = json.dumps(P.to_json())
    assert CliquePartition.from_json(text) == P


@given(st.integers(0, 10_000), st.sampled_from([0.0, 0.5, 1.0]))
@settings(max_examples=120)
def test_generated_components_partition(seed, hole):
    G = gen_phca(GeneratorSpec(seed=seed, components=2, cliques=(1, 12), clique_size=(1, 4), hole_probability=hole))
    for comp in connected_components(G):
        C = G.induced_subgraph(comp)
        P = nice_clique_partition(C)
        assert verify_partition(C, P)
        assert nice_clique_partition(C) == P


@given(st.integers(0, 10_000), st.data())
@settings(max_examples=60)
def test_partition_survives_deletions(seed, data):
    G = gen_phca(GeneratorSpec(seed=seed, components=1, cliques=(4, 10), clique_size=(1, 3), hole_probability=0.7))
    parts = partition_components(G)
    drop = data.draw(st.sets(st.sampled_from(G.vertices), max_size=3))
    H = G.remove_vertices(drop)
    for P, comp in zip(partition_components(H, parts), connected_components(H)):
        assert verify_partition(H.induced_subgraph(comp), P)


def test_restrict_drops_empty_cliques():
    P = CliquePartition(0, ((0, 1), (2,), (3, 4)), False)
    assert restrict_partition(P, {0, 3, 4}).cliques == ((0,), (3, 4))
