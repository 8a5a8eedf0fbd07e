import random

import pytest
from hypothesis import given, strategies as st

from conftest import single_bypass_quiver, two_bypass_quiver
from oracles import count_paths
from quiverpi1.quiver import (
    CyclicQuiverError,
    PathError,
    Quiver,
    QuiverError,
    Walk,
    check_acyclic,
    detect_double_bypasses,
    enumerate_bypasses,
    enumerate_paths,
    is_connected,
    spanning_tree,
)
from randgen import random_quiver


def strs(paths):
    return [str(p) for p in paths]


def test_paths_of_length_two_or_more(q1):
    classes = enumerate_paths(q1, min_len=2)
    assert strs(classes[(1, 4)]) == ["d*a", "d*c*b"]
    assert strs(classes[(1, 2)]) == ["c*b"]
    # d*c is also a path of length 2
    assert strs(classes[(3, 4)]) == ["d*c"]
    assert set(classes) == {(1, 4), (1, 2), (3, 4)}


def test_full_path_list(q1):
    assert len(q1.paths) == 4 + 4 + 3 + 1
    assert q1.longest_path_length == 3


def test_parse_and_compose(q1):
    p = q1.path("d*c*b")
    assert (p.source, p.target, len(p)) == (1, 4, 3)
    assert q1.compose(q1.path("d"), q1.path("c*b")) == p
    assert q1.compose(q1.path("c*b"), q1.path("d")) is None
    assert str(q1.path("e_3")) == "e_3"
    with pytest.raises(PathError):
        q1.path("b*c")


def test_single_bypass(q1):
    bps = enumerate_bypasses(q1)
    assert [(b.arrow, str(b.detour)) for b in bps] == [("a", "c*b")]
    assert detect_double_bypasses(q1) == []


def test_two_bypass_quiver():
    q = two_bypass_quiver()
    bps = {(b.arrow, str(b.detour)) for b in enumerate_bypasses(q)}
    assert bps == {("a", "u2*u1"), ("alpha", "v2*v1")}
    assert detect_double_bypasses(q) == []


def test_double_bypass_detected():
    q = Quiver([1, 2, 3], [("x", 1, 3), ("y", 1, 2), ("z", 2, 3), ("w", 1, 2)])
    found = {str(d) for d in detect_double_bypasses(q)}
    # (x, z*y) uses y, and y has the parallel arrow w
    assert "(x, z*y, y, w)" in found
    assert "(y, w, w, y)" in found


def test_cycle_reported():
    q = Quiver(["p", "q", "r"], [("f", "p", "q"), ("g", "q", "r"), ("h", "r", "p")])
    ok, cycle = check_acyclic(q)
    assert not ok
    assert sorted(cycle) == ["f", "g", "h"]
    with pytest.raises(CyclicQuiverError):
        q.validate()
    with pytest.raises(CyclicQuiverError):
        q.paths


def test_disconnected_and_bad_labels():
    q = Quiver([1, 2, 3], [("a", 1, 2)])
    assert not is_connected(q)
    with pytest.raises(QuiverError):
        q.validate()
    with pytest.raises(QuiverError):
        Quiver([1, 2], [("a", 1, 2), ("a", 2, 1)])
    with pytest.raises(QuiverError):
        Quiver([1, 2], [("a", 1, 9)])


def test_spanning_tree_example(q1):
    t = spanning_tree(q1)
    assert t.basepoint == 1
    assert len(t.tree_arrows) == 3
    assert t.chords == ("c",)


@pytest.mark.parametrize("seed", range(40))
def test_path_counts_match_dynamic_programming(seed):
    q = random_quiver(random.Random(seed), max_vertices=7, max_extra=5)
    expected = count_paths(q)
    got = {st: len(members) for st, members in q.parallel_classes.items()}
    assert got == expected
    assert len(set(q.paths)) == len(q.paths)


@pytest.mark.parametrize("seed", range(40))
def test_chord_count_is_cycle_rank(seed):
    q = random_quiver(random.Random(seed))
    for v in q.vertices:
        t = spanning_tree(q, v)
        assert len(t.chords) == len(q.arrows) - len(q.vertices) + 1
        assert set(t.chords).isdisjoint(t.tree_arrows)
        for x, w in t.tree_walks.items():
            assert (w.start, w.end) == (v, x)
            assert all(a in t.tree_arrows for a, _ in w.steps)


def _walk_steps():
    return st.lists(st.tuples(st.sampled_from("abcd"), st.sampled_from([1, -1])), max_size=12)


@given(_walk_steps())
def test_walk_reduction_is_idempotent(steps):
    w = Walk(0, 0, tuple(steps)).reduced()
    assert w.reduced() == w
    assert all(not (x[0] == y[0] and x[1] == -y[1]) for x, y in zip(w.steps, w.steps[1:]))


@given(_walk_steps())
def test_walk_times_inverse_reduces_to_stationary(steps):
    w = Walk(0, 0, tuple(steps))
    assert (w + w.inverse()).reduced().steps == ()


def test_sample_quivers_validate():
    single_bypass_quiver().validate()
    two_bypass_quiver().validate()
