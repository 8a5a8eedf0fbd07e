import random

import pytest

from conftest import AA, AU, GF2, VA, VU, i1, ideal
from quiverpi1 import gamma as gm
from quiverpi1.algebra import Automorphism
from quiverpi1.field import QQ, Mod
from quiverpi1.homotopy import Comparison, compare, compute_relation, generated_by
from quiverpi1.ideal import from_generators, image
from quiverpi1.quiver import Quiver, enumerate_bypasses
from randgen import random_ideal, random_quiver


def test_forward_edge(q1, ex1):
    I, J = ex1
    bp = enumerate_bypasses(q1)[0]
    eff = gm.classify_transvection_effect(I, bp, -1)
    assert eff.case is gm.Case.FORWARD_EDGE
    assert eff.image == J


def test_backward_edge(q1, ex1):
    I, J = ex1
    bp = enumerate_bypasses(q1)[0]
    eff = gm.classify_transvection_effect(J, bp, 1)
    assert eff.case is gm.Case.BACKWARD_EDGE
    assert eff.image == I


def test_zero_tau_rejected(q1, ex1):
    bp = enumerate_bypasses(q1)[0]
    with pytest.raises(gm.ZeroTauError):
        gm.classify_transvection_effect(ex1[0], bp, 0)
    with pytest.raises(gm.ZeroTauError):
        gm.explore(ex1[0], tau_set=[1, 0])


def test_same_relation_case(q1, ex1):
    bp = enumerate_bypasses(q1)[0]
    eff = gm.classify_transvection_effect(ex1[1], bp, 2)
    # d*a - d*c*b goes to d*a + d*c*b: a ~ c*b on both sides
    assert eff.case is gm.Case.SAME_RELATION
    assert eff.relation == eff.image_relation


def test_identical_ideal_case(q5):
    I = ideal(q5, QQ, {"v2*v1": 1})
    bp = next(b for b in enumerate_bypasses(q5) if b.arrow == "a")
    eff = gm.classify_transvection_effect(I, bp, 1)
    assert eff.case is gm.Case.IDENTICAL_IDEAL
    assert eff.image == I


def test_tau_candidates(q1, ex1):
    bp = enumerate_bypasses(q1)[0]
    assert gm.tau_candidates(ex1[1], bp) == [1]
    assert gm.tau_candidates(ex1[0], bp) == []


def test_example_graph(ex1):
    I, J = ex1
    g = gm.explore(I, tau_set=[1, -1])
    assert g.exhausted
    assert len(g.vertices) == 2 and len(g.edges) == 1
    (e,) = g.edges.values()
    ki, kj = compute_relation(I).key, compute_relation(J).key
    assert (e.source, e.target) == (ki, kj)
    assert (e.bypass.arrow, str(e.bypass.detour)) == ("a", "c*b")
    assert gm.find_sources(g) == [ki]
    rep = gm.theorem_report(g)
    assert rep["unique_source"]
    assert rep["source_groups"] == {ki: "free of rank 1 (ℤ)"}
    (chain,) = rep["chains"]
    assert chain["surjections"] == "ℤ ↠ 0" and chain["presentation_level"]
    props = gm.verify_properties(g)
    assert gm.properties_hold(props)
    assert (props["vertex_count"], props["vertex_bound"]) == (2, 2)


def test_rationals_two_bypasses(q5):
    I1 = i1(q5, QQ)
    g = gm.explore(I1)
    k1 = compute_relation(I1).key
    assert gm.find_sources(g) == [k1]
    props = gm.verify_properties(g)
    assert gm.properties_hold(props) and props["vertex_bound"] == 7
    assert not g.warnings
    I2 = ideal(q5, QQ, {AA: 1}, {VA: 1, AU: 1, VU: -2})
    assert compute_relation(I2).key in g.vertices
    rep = gm.theorem_report(g)
    assert [c["surjections"] for c in rep["chains"]] == ["ℤ/2 ↠ 0"]


def test_gf2_two_sources(q5):
    I1 = i1(q5, GF2)
    I2 = ideal(q5, GF2, {AA: 1}, {VA: 1, AU: 1})
    g = gm.explore(I1)
    assert set(gm.find_sources(g)) == {compute_relation(I1).key, compute_relation(I2).key}
    assert any("m < p" in w for w in g.warnings)
    assert not gm.theorem_report(g)["unique_source"]
    assert g.tau_set == [Mod(1, 2)]


def test_single_vertex_graph():
    q = Quiver([1, 2, 3], [("a", 1, 2), ("b", 2, 3)])
    I = from_generators(q, QQ, [])
    g = gm.explore(I)
    props = gm.verify_properties(g)
    assert g.bypass_count == 0
    assert len(g.vertices) == 1 and not g.edges
    assert gm.properties_hold(props) and props["vertex_bound"] == 1


def test_depth_bound_truncates(q5):
    g = gm.explore(i1(q5, QQ), depth=0)
    assert not g.exhausted
    assert gm.theorem_report(g)["truncated"]


def test_double_bypass_warning():
    q = Quiver([1, 2, 3], [("x", 1, 3), ("y", 1, 2), ("z", 2, 3), ("w", 1, 2)])
    I = from_generators(q, QQ, [])
    assert any("double bypass" in w for w in gm.explore(I, depth=1).warnings)


def test_witness_for_example(q1, ex1):
    I, J = ex1
    phi, reason = gm.find_automorphism(I, J)
    assert reason is None
    assert str(phi) == "φ_{a,c*b,-1}"
    assert image(phi, I) == J
    ident, _ = gm.find_automorphism(I, I)
    assert ident.atoms == ()


def test_witness_for_rationals(q5):
    I1 = i1(q5, QQ)
    I2 = ideal(q5, QQ, {AA: 1}, {VA: 1, AU: 1, VU: -2})
    phi, _ = gm.find_automorphism(I1, I2)
    assert image(phi, I1) == I2


def test_witness_through_dilatation(q1, ex1):
    I = ex1[1]
    J = ideal(q1, QQ, {"d*a": 1, "d*c*b": -6})
    phi, _ = gm.find_automorphism(I, J, depth=0)
    assert image(phi, I) == J


def test_no_witness_for_different_dimensions(q1, ex1):
    K = ideal(q1, QQ, {"d*a": 1}, {"d*c*b": 1})
    assert gm.find_automorphism(ex1[0], K) == (None, "different quotient dimensions")


def _random_case(seed):
    rng = random.Random(seed)
    while True:
        q = random_quiver(rng, min_bypasses=1)
        I = random_ideal(rng, q)
        if I is not None:
            return rng, q, I


@pytest.mark.parametrize("seed", range(30))
def test_edges_are_strict_one_step_refinements(seed):
    _, q, I = _random_case(seed)
    g = gm.explore(I)
    assert not g.violations and not g.inconclusive
    for e in g.edges.values():
        fine, coarse = g.vertices[e.source].relation, g.vertices[e.target].relation
        assert compare(fine, coarse) is Comparison.STRICTLY_FINER
        assert generated_by(fine, [([e.bypass.arrow], e.bypass.detour)]) == coarse


@pytest.mark.parametrize("seed", range(15))
def test_exploration_is_deterministic(seed):
    _, q, I = _random_case(seed)
    g = gm.explore(I)
    keys = set(g.vertices)
    for v in list(g.vertices.values()):
        again = gm.explore(v.ideals[0])
        assert set(again.vertices) == keys


@pytest.mark.parametrize("seed", range(15))
def test_every_vertex_reached_from_a_source(seed):
    _, q, I = _random_case(seed)
    g = gm.explore(I)
    for key in g.vertices:
        path = gm.path_from_sources(g, key)
        assert path is not None and path[-1] == key


def test_dot_export(ex1):
    g = gm.explore(ex1[0])
    dot = gm.to_dot(g)
    assert dot.startswith("digraph Gamma {")
    assert dot.count("->") == 1
    assert "φ_{a,c*b," in dot


def test_automorphism_composition_label(q5):
    bps = {b.arrow: b for b in enumerate_bypasses(q5)}
    phi = Automorphism.transvection(bps["a"], -1) @ Automorphism.transvection(bps["alpha"], -1)
    assert str(phi) == "φ_{a,u2*u1,-1} ∘ φ_{alpha,v2*v1,-1}"
    assert str(phi.inverse()) == "φ_{alpha,v2*v1,1} ∘ φ_{a,u2*u1,1}"
