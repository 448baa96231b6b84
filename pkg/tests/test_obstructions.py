from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from helpers import complete, cycle, graphs, path
from oracles import PATTERNS, all_small_obstruction_sets, induced_cycles_brute, is_phca_brute, to_nx
from phcakernel import _kernels
from phcakernel.graph import Graph
from phcakernel.obstructions import (
    FIXED_PATTERNS,
    Obstruction,
    enumerate_minimal_small_obstructions,
    find_any_obstruction,
    find_fixed_obstruction,
    find_hole_avoiding,
    find_monad,
    greedy_claw_packing_at,
    induced_cycles,
    verify_obstruction,
)


def from_nx(g):
    return Graph(g.nodes, g.edges)


def monad(L):
    return cycle(L).add_vertices({L: []})


@pytest.fixture(params=["python", "cython"])
def backend(request):
    try:
        prev = _kernels.use_backend(request.param)
    except ImportError:
        pytest.skip("extension not built")
    yield request.param
    _kernels.use_backend(prev)


def test_claw_is_found():
    G = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
    O = find_fixed_obstruction(G)
    assert O.kind == "Claw" and O.vertices == (0, 1, 2, 3)


def test_co_c6_is_found():
    O = find_fixed_obstruction(cycle(6).complement())
    assert O.kind == "CoC6" and O.vertices == tuple(range(6))


def test_c7_has_no_fixed_obstruction():
    assert find_fixed_obstruction(cycle(7)) is None


def test_hole_in_c4():
    h = find_hole_avoiding(cycle(4))
    assert sorted(h) == [0, 1, 2, 3]


def test_tree_has_no_hole():
    T = Graph(range(7), [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    assert find_hole_avoiding(T) is None


def test_c5_with_chord_hole():
    G = Graph(range(5), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    assert set(find_hole_avoiding(G)) == {0, 2, 3, 4}


def test_hole_avoiding_respects_F():
    G = cycle(6)
    assert find_hole_avoiding(G, {3}) is None


def test_monad_c4_plus_isolated():
    O = find_monad(monad(4))
    assert O.kind == "Monad" and O.centre == 4 and sorted(O.hole) == [0, 1, 2, 3]


def test_wheel_has_no_monad():
    W5 = from_nx(nx.wheel_graph(6))
    assert find_monad(W5) is None


def test_c9_with_three_consecutive_attachments():
    G = cycle(9).add_vertices({9: [0, 1, 2]})
    assert find_monad(G) is None
    assert find_any_obstruction(G) is None


def test_proper_interval_is_obstruction_free():
    assert find_any_obstruction(path(6)) is None


def test_net_and_big_monad():
    assert find_any_obstruction(from_nx(PATTERNS["Net"])).kind == "Net"
    O = find_any_obstruction(monad(7))
    assert O.kind == "Monad" and O.size == 8


@pytest.mark.parametrize("name", list(PATTERNS) + ["Monad4", "Monad5", "Monad6"])
def test_patterns_report_themselves_and_are_minimal(name, backend):
    if name.startswith("Monad"):
        G, kind = monad(int(name[-1])), "Monad"
    else:
        G, kind = from_nx(PATTERNS[name]), name
    O = find_any_obstruction(G)
    assert O.kind == kind and set(O.vertices) == set(G.vertices)
    assert verify_obstruction(G, O)
    for v in G.vertices:
        assert find_any_obstruction(G.remove_vertices([v])) is None


def test_enumerate_examples():
    claw = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
    assert enumerate_minimal_small_obstructions(claw) == [frozenset(range(4))]
    assert enumerate_minimal_small_obstructions(cycle(8)) == []
    two = Graph(range(8), [(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7)])
    assert enumerate_minimal_small_obstructions(two) == [frozenset(range(4)), frozenset(range(4, 8))]


def test_greedy_claw_examples():
    star = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
    assert len(greedy_claw_packing_at(star, 0, {1, 2, 3})) == 1
    assert greedy_claw_packing_at(complete(5), 0, {1, 2, 3, 4}) == []
    six = Graph(range(7), [(0, i) for i in range(1, 7)])
    claws = greedy_claw_packing_at(six, 0, set(range(1, 7)))
    assert len(claws) == 2
    assert set(claws[0].vertices) & set(claws[1].vertices) == {0}


def test_greedy_claw_ignores_disallowed_leaves():
    six = Graph(range(7), [(0, i) for i in range(1, 7)])
    assert len(greedy_claw_packing_at(six, 0, {1, 2, 3, 4})) == 1


def test_verify_rejects_wrong_claims():
    G = cycle(5).add_vertices({5: []})
    assert not verify_obstruction(G, Obstruction("Claw", (0, 1, 2, 3)))
    assert not verify_obstruction(G, Obstruction.monad((0, 1, 2, 3), 5))
    assert not verify_obstruction(G, Obstruction.monad((0, 1, 2, 3, 4), 1))
    assert verify_obstruction(G, Obstruction.monad((0, 1, 2, 3, 4), 5))


def test_json_shape():
    O = find_monad(monad(4))
    assert O.to_json() == {"kind": "Monad", "vertices": [0, 1, 2, 3, 4], "hole": list(O.hole), "centre": 4}


@given(graphs(max_n=9))
@settings(max_examples=200)
def test_obstruction_free_iff_brute_force(G):
    O = find_any_obstruction(G)
    assert (O is None) == is_phca_brute(G)
    if O is not None:
        assert verify_obstruction(G, O)


@given(graphs(max_n=9))
def test_enumeration_matches_brute_force(G):
    fam = enumerate_minimal_small_obstructions(G)
    assert len(set(fam)) == len(fam)
    assert set(fam) == all_small_obstruction_sets(G)
    for S in fam:
        for v in S:
            assert find_any_obstruction(G.induced_subgraph(S - {v})) is None


@given(graphs(max_n=9))
def test_induced_cycles_match_brute_force(G):
    mine = induced_cycles(G)
    assert len(mine) == len({frozenset(c) for c in mine})
    assert {frozenset(c) for c in mine} == induced_cycles_brute(G)


@given(graphs(max_n=10))
def test_hole_is_induced_cycle(G):
    h = find_hole_avoiding(G)
    if h is None:
        assert nx.is_chordal(to_nx(G))
    else:
        assert Obstruction.monad(h, -1).hole == h
        sub = to_nx(G).subgraph(h)
        assert len(h) >= 4 and all(d == 2 for _, d in sub.degree()) and nx.is_connected(sub)
        for i in range(len(h)):
            assert G.has_edge(h[i], h[(i + 1) % len(h)])


@given(graphs(max_n=11))
def test_backends_agree(G):
    results = []
    for name in ("python", "cython"):
        try:
            prev = _kernels.use_backend(name)
        except ImportError:
            pytest.skip("extension not built")
        G.__dict__.pop("dense", None)
        results.append((find_any_obstruction(G), find_hole_avoiding(G),
                        [tuple(e) for p in FIXED_PATTERNS for e in _kernels.embeddings(G.dense, p, None, 50)]))
        _kernels.use_backend(prev)
    G.__dict__.pop("dense", None)
    assert results[0] == results[1]


def test_claw_packing_is_a_lower_bound_on_maximum():
    G = Graph(range(8), [(0, i) for i in range(1, 8)] + [(1, 2)])
    claws = greedy_claw_packing_at(G, 0, set(range(1, 8)))
    best = 0
    leaves = list(range(1, 8))
    triples = [t for t in combinations(leaves, 3) if not any(G.has_edge(a, b) for a, b in combinations(t, 2))]
    for r in range(3, 0, -1):
        if any(len(set().union(*c)) == 3 * r for c in combinations(triples, r)):
            best = r
            break
    assert 1 <= len(claws) <= best
