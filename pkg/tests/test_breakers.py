import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import naive_prefix_break_exists
from thicklab.breakers import (SelectionExhausted, SplitterNotFound, SubsetFamily, kuratowski_break,
                               prefix_break, split_family)


def fam(universe, *sets):
    return SubsetFamily(universe, tuple(sets))


def test_single_member_single_color():
    f = kuratowski_break(fam(6, {5}), 1)
    assert f(5) == 0 and f.image({5}) == {0}


def test_greedy_trace_on_two_equal_members():
    f = kuratowski_break(fam(9, set(range(9)), set(range(9))), 2)
    assert f.values[:4] == (0, 1, 0, 1)
    assert f.image(range(9)) == {0, 1}


def test_disjoint_singletons_exhaust():
    with pytest.raises(SelectionExhausted):
        kuratowski_break(fam(3, {0}, {1}, {2}), 3)


def test_range_must_fit_family():
    with pytest.raises(ValueError):
        kuratowski_break(fam(4, {0, 1}), 2)


def test_prefix_depth_zero_is_constant():
    f = prefix_break(fam(4, {0, 1}), 0, 3)
    assert set(f.values) == {0}


def test_prefix_bijection_on_three_points():
    f = prefix_break(fam(3, {0, 1, 2}), 3, 4)
    assert sorted(f.values) == [0, 1, 2]


def test_prefix_empty_member_exhausts():
    with pytest.raises(SelectionExhausted):
        prefix_break(fam(2, set()), 1, 2)


def test_split_one_member():
    trace, f = split_family(fam(4, {0, 1, 2, 3}), 2)
    R0, R1 = trace.pieces
    assert R0 and R1 and not R0 & R1
    assert f.covers({0, 1, 2, 3}, 2)


def test_split_empty_family_vacuous():
    trace, _ = split_family(fam(5), 3)
    assert all(not r for r in trace.pieces)


def test_triangle_has_no_splitter():
    with pytest.raises(SplitterNotFound) as exc:
        split_family(fam(3, {0, 1}, {0, 2}, {1, 2}), 2)
    assert exc.value.round == 0


def test_split_is_deterministic():
    rng = random.Random(3)
    H = fam(64, *[set(rng.sample(range(64), 20)) for _ in range(6)])
    assert split_family(H, 3, seed=9)[0].to_dict() == split_family(H, 3, seed=9)[0].to_dict()


families = st.integers(1, 5).flatmap(lambda n: st.lists(
    st.sets(st.integers(0, 63), min_size=n * n, max_size=n * n + 4), min_size=n, max_size=n))


@given(families, st.data())
@settings(max_examples=100, deadline=None)
def test_kuratowski_never_exhausts_with_n_squared(sets, data):
    n = len(sets)
    t = data.draw(st.integers(1, n))
    f = kuratowski_break(SubsetFamily(64, tuple(sets)), t)
    assert all(f.covers(s, t) for s in sets)


@given(st.lists(st.sets(st.integers(0, 4), max_size=5), min_size=1, max_size=3), st.integers(1, 3))
@settings(max_examples=80, deadline=None)
def test_prefix_break_reuse_matches_brute_force_when_it_succeeds(sets, depth):
    try:
        f = prefix_break(SubsetFamily(5, tuple(sets)), depth, 3, reuse=True)
    except SelectionExhausted:
        return
    assert all(f.covers(s, depth) for s in sets)
    assert naive_prefix_break_exists(5, sets, depth, 3)


@given(st.lists(st.sets(st.integers(0, 40), min_size=8, max_size=20), min_size=1, max_size=5),
       st.integers(1, 3), st.integers(0, 5))
@settings(max_examples=60, deadline=None)
def test_split_pieces_disjoint_and_meeting(sets, k, seed):
    H = SubsetFamily(41, tuple(sets))
    try:
        trace, _ = split_family(H, k, seed=seed)
    except SplitterNotFound:
        return
    pieces = trace.pieces
    for i in range(k):
        for j in range(i + 1, k):
            assert not pieces[i] & pieces[j]
        assert all(pieces[i] & s for s in H.sets)
