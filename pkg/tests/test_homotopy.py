import itertools
import random

import pytest

from conftest import AA, AU, GF2, VA, VU, i1, ideal, two_bypass_quiver
from quiverpi1.algebra import Automorphism
from quiverpi1.field import QQ
from quiverpi1.homotopy import (
    Comparison,
    HomotopyRelation,
    NonParallelError,
    Verdict,
    are_homotopic,
    compare,
    compute_relation,
    generated_by,
    is_finer,
    saturate,
)
from quiverpi1.ideal import image
from quiverpi1.pi1 import (
    GroupPresentation,
    abelian_image_is_trivial,
    bounded_triviality,
    free_reduce,
    invert_word,
    word_of_path,
)
from quiverpi1.quiver import enumerate_bypasses
from randgen import random_ideal, random_quiver


def named_blocks(rel):
    return sorted(sorted(map(str, b)) for b in rel.blocks)


def suite(n, seed=0, min_bypasses=1):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        q = random_quiver(rng, min_bypasses=min_bypasses)
        I = random_ideal(rng, q)
        if I is not None:
            out.append((rng, q, I))
    return out


def test_monomial_relation_is_discrete(ex1):
    I, _ = ex1
    assert compute_relation(I).blocks == []


def test_binomial_relation_cancels_to_arrows(ex1):
    _, J = ex1
    assert named_blocks(compute_relation(J)) == [["a", "c*b"], ["d*a", "d*c*b"]]


def test_i1_relation(q5):
    rel = compute_relation(i1(q5, QQ))
    assert rel.same_block(q5.path(AA), q5.path(VU))
    assert rel.same_block(q5.path(VA), q5.path(AU))
    assert not rel.same_block(q5.path(AA), q5.path(VA))
    assert not rel.same_block(q5.path("a"), q5.path("u2*u1"))
    assert not rel.same_block(q5.path("alpha"), q5.path("v2*v1"))


def test_verdicts_on_example(q1, ex1):
    I, J = ex1
    rel_i, rel_j = compute_relation(I), compute_relation(J)
    hj = are_homotopic(rel_j, "a", "c*b")
    assert (hj.verdict, hj.tier) == (Verdict.HOMOTOPIC, 1)
    hi = are_homotopic(rel_i, "a", "c*b")
    assert (hi.verdict, hi.tier) == (Verdict.NOT_HOMOTOPIC, 2)
    assert are_homotopic(rel_i, "d*c*b", "d*c*b")
    with pytest.raises(NonParallelError):
        are_homotopic(rel_i, "a", "d*a")


def test_order_on_example(ex1):
    I, J = ex1
    rel_i, rel_j = compute_relation(I), compute_relation(J)
    assert compare(rel_i, rel_j) is Comparison.STRICTLY_FINER
    assert compare(rel_j, rel_i) is Comparison.STRICTLY_COARSER
    assert compare(rel_i, rel_i) is Comparison.EQUAL
    assert generated_by(rel_i, [("a", "c*b")]) == rel_j


def test_order_over_gf2(q5):
    I1 = i1(q5, GF2)
    I2 = ideal(q5, GF2, {AA: 1}, {VA: 1, AU: 1})
    r1, r2 = compute_relation(I1), compute_relation(I2)
    assert compare(r1, r2) is Comparison.STRICTLY_COARSER
    assert compare(r2, r1) is Comparison.STRICTLY_FINER
    assert generated_by(r2, [(AA, VU)]) == r1


def test_incomparable():
    q = two_bypass_quiver()
    r1 = HomotopyRelation(q, [(q.path("a"), q.path("u2*u1"))])
    r2 = HomotopyRelation(q, [(q.path("alpha"), q.path("v2*v1"))])
    assert compare(r1, r2) is Comparison.INCOMPARABLE


@pytest.mark.parametrize("idx", range(25))
def test_dilatations_preserve_relation(idx):
    rng, q, I = suite(25, seed=11)[idx]
    scal = {a.label: rng.choice([-3, -1, 2, 5, 7]) for a in q.arrows}
    J = image(Automorphism.dilatation(scal), I)
    assert compute_relation(J).key == compute_relation(I).key


def _random_pairs(rng, q, count):
    classes = [m for m in q.parallel_classes.values() if len(m) > 1]
    pairs = []
    for _ in range(count):
        if not classes:
            break
        u, v = rng.sample(rng.choice(classes), 2)
        pairs.append((u, v))
    return pairs


@pytest.mark.parametrize("seed", range(25))
def test_saturation_is_a_closure_operator(seed):
    rng = random.Random(seed)
    q = random_quiver(rng, max_extra=5)
    pairs = _random_pairs(rng, q, 4)
    small = HomotopyRelation(q, pairs[:2])
    big = HomotopyRelation(q, pairs)
    assert all(big.same_block(u, v) for u, v in pairs)
    assert is_finer(small, big)
    again = HomotopyRelation(q, [(b[0], p) for b in big.blocks for p in b[1:]])
    assert again == big


@pytest.mark.parametrize("seed", range(25))
def test_saturated_relation_is_a_congruence(seed):
    rng = random.Random(seed)
    q = random_quiver(rng, max_extra=5)
    rel = HomotopyRelation(q, _random_pairs(rng, q, 3))
    for block in rel.blocks:
        for u, v in itertools.combinations(block, 2):
            for a in q.out_arrows(u.target):
                g = q.path([a.label])
                assert rel.same_block(q.compose(g, u), q.compose(g, v))
            for a in q.in_arrows(u.source):
                g = q.path([a.label])
                assert rel.same_block(q.compose(u, g), q.compose(v, g))


def test_relation_order_is_a_partial_order():
    rng = random.Random(5)
    q = random_quiver(rng, max_vertices=6, max_extra=5, min_bypasses=2)
    rels = [HomotopyRelation(q, _random_pairs(rng, q, rng.randint(0, 3))) for _ in range(12)]
    for r in rels:
        assert is_finer(r, r)
    for r, s in itertools.product(rels, repeat=2):
        if is_finer(r, s) and is_finer(s, r):
            assert r == s
    for r, s, t in itertools.product(rels, repeat=3):
        if is_finer(r, s) and is_finer(s, t):
            assert is_finer(r, t)


@pytest.mark.parametrize("idx", range(40))
def test_verdicts_agree_with_abelianization(idx):
    _, q, I = suite(40, seed=3)[idx]
    rel = compute_relation(I)
    pres = rel.presentation
    for bp in enumerate_bypasses(q):
        alpha = q.path([bp.arrow])
        v = are_homotopic(rel, alpha, bp.detour)
        assert v.verdict is not Verdict.UNDETERMINED
        word = free_reduce(word_of_path(alpha, pres.tree) + invert_word(word_of_path(bp.detour, pres.tree)))
        assert abelian_image_is_trivial(pres, word) == (v.verdict is Verdict.HOMOTOPIC)


def test_bounded_word_search():
    pres = GroupPresentation(("x", "y"), ((("x", 1), ("y", 1)), (("y", 1), ("y", 1))), 0, None)
    # x = y^-1 and y^2 = 1, so x^2 = 1
    assert bounded_triviality(pres, (("x", 1), ("x", 1)), 6)
    assert not bounded_triviality(pres, (("x", 1),), 6)


def test_saturate_returns_block_minima(q1):
    rep = saturate(q1, [(q1.path("d*a"), q1.path("d*c*b"))])
    idx = q1.path_index
    assert rep[idx[q1.path("c*b")]] == idx[q1.path("a")]
