from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import has_sunflower_brute, minimal_hitting_sets_brute
from phcakernel.hitting_set import (
    SetFamily,
    find_sunflower,
    hits,
    is_minimal_hitting_set,
    reduce_family,
)


def fam(sets, k=1, d=3):
    return SetFamily.build(sets, k=k, d=d)


def test_disjoint_singletons():
    sf = find_sunflower(fam([{1}, {2}, {3}], d=1), 3)
    assert sf.core == frozenset() and len(sf.petals) == 3 and sf.is_valid()


def test_common_core():
    sf = find_sunflower(fam([{1, 2}, {1, 3}, {1, 4}]), 3)
    assert sf.core == {1} and sf.is_valid()


def test_triangle_has_no_sunflower():
    F = [{1, 2}, {2, 3}, {1, 3}]
    assert find_sunflower(fam(F), 3) is None
    assert not has_sunflower_brute(F, 3)


def test_reduce_singletons():
    F = fam([{1}, {2}, {3}], k=1, d=1)
    R = reduce_family(F)
    assert len(R) <= 2 and set(R.sets) <= set(F.sets)
    assert minimal_hitting_sets_brute(F.sets, F.universe, 1) == set()
    assert minimal_hitting_sets_brute(R.sets, F.universe, 1) == set()


def test_no_reduction_below_bound():
    F = fam([{1, 2}, {1, 3}, {1, 4}], k=1, d=2)
    assert reduce_family(F) == F


def test_eager_drops_a_petal():
    k = 1
    F = fam([{0, 1}, {0, 2}, {0, 3}], k=k, d=2)
    R = reduce_family(F, eager=True)
    assert len(R) == 2 and frozenset({0, 3}) not in R.sets
    for fam_ in (F, R):
        sols = minimal_hitting_sets_brute(fam_.sets, F.universe, k)
        assert sols == {frozenset({0})}


def test_unfaithful_flag_and_validation():
    assert fam([{1}], d=3).unfaithful
    assert not SetFamily.build([{1}], k=0).unfaithful
    with pytest.raises(ValueError):
        fam([{1, 2, 3, 4}], d=3)
    with pytest.raises(ValueError):
        reduce_family(fam([]))


def test_json_round_trip():
    F = fam([{3, 1}, {2}])
    assert SetFamily.from_json(F.to_json()) == F


def test_hit_helpers():
    S = [frozenset({1, 2}), frozenset({2, 3})]
    assert hits({2}, S) and is_minimal_hitting_set({2}, S)
    assert hits({1, 2}, S) and not is_minimal_hitting_set({1, 2}, S)


@st.composite
def families(draw, max_u=12, max_d=3, max_sets=40):
    u = draw(st.integers(1, max_u))
    d = draw(st.integers(1, max_d))
    sets = draw(st.lists(st.sets(st.integers(0, u - 1), min_size=1, max_size=d), min_size=1, max_size=max_sets))
    k = draw(st.integers(0, 3))
    return SetFamily.build(sets, k=k, d=d, universe=range(u))


@given(families(), st.booleans())
def test_reduction_preserves_minimal_hitting_sets(F, eager):
    R = reduce_family(F, eager=eager)
    assert set(R.sets) <= set(F.sets) and R.sets
    assert len(R) <= factorial(F.d) * (F.k + 1) ** F.d
    assert minimal_hitting_sets_brute(F.sets, F.universe, F.k) == minimal_hitting_sets_brute(R.sets, F.universe, F.k)


@given(families(max_u=8, max_sets=15), st.integers(1, 4))
def test_sunflowers_are_valid(F, p):
    sf = find_sunflower(F, p)
    if sf is not None:
        assert sf.is_valid() and len(sf.petals) >= p and set(sf.petals) <= set(F.sets)
    if len(F) > factorial(F.d) * (p - 1) ** F.d:
        assert sf is not None


@settings(max_examples=40)
@given(families(max_u=10, max_d=2, max_sets=30))
def test_small_bound_forces_reduction(F):
    # d <= 2 and k small make the counting bound reachable
    R = reduce_family(F)
    assert len(R) <= F.bound
