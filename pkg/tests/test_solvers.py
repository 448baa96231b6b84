import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import complete, cycle, graphs, path
from oracles import PATTERNS, max_disjoint_paths, min_cut_brute, min_deletion_brute, separates
from phcakernel.graph import Graph
from phcakernel.recognition import is_phca
from phcakernel.solvers import (
    approx_solve,
    exact_oracle,
    exact_solve,
    greedy_oracle,
    greedy_solve,
    min_vertex_cut,
    true_twin_classes,
)


def claw(start=0):
    return Graph(range(start, start + 4), [(start, start + i) for i in (1, 2, 3)])


def pattern(name):
    g = PATTERNS[name]
    return Graph(g.nodes, g.edges)


def test_claw_deletes_smallest_vertex():
    assert exact_solve(claw(), 1).deleted == {0}
    assert exact_solve(claw(), 0) is None


def test_phca_needs_nothing():
    assert exact_solve(cycle(7), 0).deleted == frozenset()
    assert approx_solve(greedy_oracle(), path(5)).deleted == frozenset()


def test_two_claws():
    G = Graph(range(8), claw().edges() + claw(4).edges())
    assert exact_solve(G, 1) is None
    assert exact_solve(G, 2).deleted == {0, 4}


def test_unbounded_budget_returns_optimum():
    G = Graph(range(8), claw().edges() + claw(4).edges())
    assert exact_solve(G).size == 2


def test_greedy_net_deletes_everything():
    sol = greedy_solve(pattern("Net"))
    assert sol.size == 6 and sol.factor is None
    assert exact_solve(pattern("Net")).size == 1


def test_greedy_monad_deletes_centre():
    G = cycle(5).add_vertices({5: []})
    assert greedy_solve(G).deleted == {5}


def test_twin_classes():
    G = complete(3).add_vertices({3: [0]})
    assert true_twin_classes(G) == [(0,), (1, 2), (3,)]


def test_oracle_factors():
    assert exact_oracle().factor == 1 and exact_oracle().guaranteed
    g = greedy_oracle()
    assert g.factor == 6 and not g.guaranteed


@settings(max_examples=60)
@given(graphs(max_n=9), st.integers(0, 3))
def test_exact_matches_exhaustive(G, k):
    got = exact_solve(G, k)
    want = min_deletion_brute(G, k)
    if want is None:
        assert got is None
    else:
        assert got is not None and got.deleted == want


@settings(max_examples=25)
@given(graphs(min_n=10, max_n=10), st.integers(0, 2))
def test_exact_matches_exhaustive_n10(G, k):
    got = exact_solve(G, k)
    want = min_deletion_brute(G, k)
    assert (got.deleted if got else None) == want


@given(graphs(max_n=10))
def test_solutions_verify(G):
    for sol in (greedy_solve(G), exact_solve(G, 4)):
        if sol is not None:
            assert is_phca(G.remove_vertices(sol.deleted)).member


def test_cut_path():
    assert min_vertex_cut(path(3), {0}, {2}) == {1}


def test_cut_disconnected():
    G = Graph(range(4), [(0, 1), (2, 3)])
    assert min_vertex_cut(G, {0}, {3}) == frozenset()


def test_cut_two_paths_may_use_terminal():
    # the single source is itself a cut of size one
    G = Graph(range(4), [(0, 1), (1, 3), (0, 2), (2, 3)])
    assert min_vertex_cut(G, {0}, {3}) == {0}
    assert min_cut_brute(G, {0}, {3}) == 1
    # with two sources and two sinks on separate paths, two vertices are needed
    H = Graph(range(6), [(0, 1), (1, 2), (3, 4), (4, 5)])
    S = min_vertex_cut(H, {0, 3}, {2, 5})
    assert S == {1, 4}


def test_cut_prefers_internal_vertices():
    G = Graph(range(6), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    S = min_vertex_cut(G, {0}, {5})
    assert len(S) == 1 and not S & {0, 5}


def test_cut_rejects_overlap():
    with pytest.raises(ValueError):
        min_vertex_cut(path(3), {0, 1}, {1})


@st.composite
def cut_instances(draw):
    G = draw(graphs(min_n=2, max_n=9))
    verts = sorted(G.vertices)
    rng = random.Random(draw(st.integers(0, 10**6)))
    rng.shuffle(verts)
    a = draw(st.integers(1, len(verts) - 1))
    b = draw(st.integers(1, len(verts) - a))
    return G, set(verts[:a]), set(verts[a:a + b])


@given(cut_instances())
def test_cut_menger(inst):
    G, A, B = inst
    S = min_vertex_cut(G, A, B)
    assert separates(G, S, A, B)
    assert len(S) == max_disjoint_paths(G, A, B) == min_cut_brute(G, A, B)
