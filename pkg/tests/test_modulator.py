from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import complete, cycle, graphs, path
from oracles import all_small_obstruction_sets, is_phca_brute
from phcakernel.errors import InternalError, NoInstance
from phcakernel.graph import Graph
from phcakernel.instance import Instance
from phcakernel.modulator import (
    assemble_nice_modulator,
    build_efficient_modulator,
    copy_graph,
    covered,
    red_phcavd,
    singleton_w_rule,
)
from phcakernel.recognition import is_phca
from phcakernel.solvers import exact_oracle, greedy_oracle
from phcakernel.verification import GeneratorSpec, gen_phca

CLAW = Graph(range(4), [(0, 1), (0, 2), (0, 3)])


def test_copy_empty_set_is_identity():
    assert copy_graph(cycle(5), [], 3) == cycle(5)


def test_copy_edge_gives_triangle():
    H = copy_graph(path(2), [0], 1)
    assert H == complete(3)
    assert H.labels[2] == (0, 1)


def test_copy_twins_are_true_twins():
    G = cycle(6)
    H = copy_graph(G, [0, 1, 3], 2)
    assert H.n == 12
    for x, (v, _) in ((x, lab) for x, lab in H.labels.items()):
        assert H.closed_neighbors(x) == H.closed_neighbors(v)


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.integers(0, 4), st.data())
def test_copy_preserves_phca(seed, t, data):
    G = gen_phca(GeneratorSpec(seed=seed, cliques=(4, 7), clique_size=(1, 2)))
    U = data.draw(st.sets(st.sampled_from(G.vertices), max_size=4))
    assert is_phca(copy_graph(G, U, t)).member


def test_red_on_phca_is_empty():
    R = red_phcavd(cycle(7), 3, 5, exact_oracle())
    assert R.M == frozenset() and R.W == ()


def test_red_on_claw():
    R = red_phcavd(CLAW, 1, 1, exact_oracle())
    assert R.m_sizes[0] == 1 and 0 in R.M
    for S in _solutions(CLAW, 1):
        assert all(S & w for w in R.W)


def test_red_no_instance():
    two = Graph(range(8), CLAW.edges() + [(4, 5), (4, 6), (4, 7)])
    with pytest.raises(NoInstance):
        red_phcavd(two, 1, 2, exact_oracle())
    # the greedy oracle cannot certify this
    R = red_phcavd(two, 1, 1, greedy_oracle(1))
    assert R.M


def _solutions(G, ell):
    out = []
    for s in range(ell + 1):
        for S in combinations(G.vertices, s):
            if is_phca_brute(G.remove_vertices(S)):
                out.append(frozenset(S))
    return out


@settings(max_examples=30)
@given(graphs(min_n=4, max_n=8), st.integers(1, 3), st.integers(1, 2))
def test_red_contracts(G, ell, r):
    try:
        R = red_phcavd(G, ell, r, exact_oracle())
    except NoInstance:
        assert not _solutions(G, ell)
        return
    assert is_phca(G.remove_vertices(R.M)).member
    for S in _solutions(G, ell):
        assert all(S & w for w in R.W)
    for O in all_small_obstruction_sets(G, max_size=G.n):
        if not covered(O, R.W):
            assert len(O & R.M) > r
    for i, layer in enumerate(R.layers):
        assert len(layer) <= ell ** (i + 1)
        assert all(len(set(t)) == len(t) == i + 1 for t in layer)
        assert R.m_sizes[i] <= sum(ell ** (j + 1) for j in range(i + 1))
    assert all(w <= R.M for w in R.W)


def test_efficient_modulator_phca():
    E = build_efficient_modulator(cycle(6), 2, exact_oracle())
    assert E.T1 == frozenset()


def test_efficient_modulator_claw():
    E = build_efficient_modulator(CLAW, 1, exact_oracle())
    assert E.T1 == {0, 1, 2, 3} and E.approx == {0}


def test_efficient_modulator_no_instance():
    with pytest.raises(NoInstance):
        build_efficient_modulator(CLAW, 0, exact_oracle())
    assert build_efficient_modulator(CLAW, 0, greedy_oracle()).T1 == {0, 1, 2, 3}


@settings(max_examples=40)
@given(graphs(min_n=4, max_n=9), st.integers(0, 2), st.booleans())
def test_efficient_modulator_hitting_sets(G, k, eager):
    try:
        E = build_efficient_modulator(G, k, exact_oracle(), eager=eager)
    except NoInstance:
        return
    assert is_phca(G.remove_vertices(E.T1)).member
    full = all_small_obstruction_sets(G)
    inner = all_small_obstruction_sets(G.induced_subgraph(E.T1))

    def minimal(Z, fam):
        return all(Z & s for s in fam) and all(any(not ((Z - {z}) & s) for s in fam) for z in Z)

    for s in range(k + 1):
        for Z in map(frozenset, combinations(G.vertices, s)):
            assert minimal(Z, full) == minimal(Z, inner)


def test_singleton_rule():
    I = Instance.start(CLAW, 1)
    J, W, ev = singleton_w_rule(I, [frozenset({0}), frozenset({0, 1}), frozenset({2, 3})])
    assert J.k == 0 and 0 not in J.graph and W == (frozenset({2, 3}),)
    assert ev.deleted == (0,) and ev.k_after == 0


def test_singleton_rule_absent_and_exhausted():
    I = Instance.start(CLAW, 0)
    assert singleton_w_rule(I, [frozenset({1, 2})]) is None
    with pytest.raises(NoInstance):
        singleton_w_rule(I, [frozenset({0})])
    assert singleton_w_rule(Instance.start(CLAW, 1, guaranteed=False), [frozenset({0})]) is None


def test_assemble():
    B = assemble_nice_modulator({1, 2}, {2, 3}, [frozenset({2, 3})], ell=3)
    assert B.T == {1, 2, 3}
    assert assemble_nice_modulator(set(), set(), [], ell=2).T == frozenset()
    assert len(assemble_nice_modulator({1}, {2}, [], ell=2).T) == 2
    with pytest.raises(InternalError):
        assemble_nice_modulator(set(), {2}, [frozenset({2})], ell=2)
    with pytest.raises(InternalError):
        assemble_nice_modulator(set(), {2}, [frozenset({2, 5})], ell=2)


def test_bundle_without():
    B = assemble_nice_modulator({1}, {2, 3, 4}, [frozenset({2, 3}), frozenset({3, 4})], ell=3)
    C = B.without([2])
    assert C.T == {1, 3, 4} and C.W == (frozenset({3, 4}),)
