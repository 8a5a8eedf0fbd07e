"""Homotopy relations of bound quivers, materialized on oriented paths.

The relation is saturated from its generator pairs with two rules:

* concatenation: ``u ~ v`` implies ``g*u ~ g*v`` and ``u*g ~ v*g`` for arrows g;
* cancellation: ``g*u ~ g*v`` or ``u*g ~ v*g`` implies ``u ~ v``.

Whether these two rules recover the full walk-level relation restricted to
paths is not known in general, so :func:`are_homotopic` falls back on the
abelianized fundamental group (sound for "no") and a bounded word search
(sound for "yes") before answering ``UNDETERMINED``.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .ideal import AdmissibleIdeal, minimal_relation_partition
from .pi1 import (
    abelian_image_is_trivial,
    abelianization,
    bounded_triviality,
    free_reduce,
    invert_word,
    presentation,
    word_of_path,
)
from .quiver import Path, Quiver


class NonParallelError(ValueError):
    pass


class Verdict(enum.Enum):
    HOMOTOPIC = "homotopic"
    NOT_HOMOTOPIC = "not homotopic"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class HomotopyVerdict:
    verdict: Verdict
    tier: int  # 1 partition, 2 abelianization, 3 bounded word search, 0 none

    def __bool__(self):
        return self.verdict is Verdict.HOMOTOPIC


class Comparison(enum.Enum):
    EQUAL = "equal"
    STRICTLY_FINER = "strictly finer"
    STRICTLY_COARSER = "strictly coarser"
    INCOMPARABLE = "incomparable"


@lru_cache(maxsize=128)
def _tables(q: Quiver):
    idx = q.path_index
    paths = q.paths
    left = [dict() for _ in paths]  # arrow label -> index of arrow*path
    right = [dict() for _ in paths]  # arrow label -> index of path*arrow
    first = [None] * len(paths)  # (last applied arrow, index of the rest)
    last = [None] * len(paths)  # (first applied arrow, index of the rest)
    for i, p in enumerate(paths):
        for a in q.out_arrows(p.target):
            left[i][a.label] = idx[Path(p.source, a.target, (a.label,) + p.arrows)]
        for a in q.in_arrows(p.source):
            right[i][a.label] = idx[Path(a.source, p.target, p.arrows + (a.label,))]
        if p.arrows:
            head = q.arrow(p.arrows[0])
            tail = q.arrow(p.arrows[-1])
            rest_l = Path(p.source, head.source, p.arrows[1:]) if len(p) > 1 else Path(p.source, p.source)
            rest_r = Path(tail.target, p.target, p.arrows[:-1]) if len(p) > 1 else Path(p.target, p.target)
            first[i] = (head.label, idx[rest_l])
            last[i] = (tail.label, idx[rest_r])
    return left, right, first, last


def saturate(q: Quiver, pairs) -> list:
    """Least path-level congruence containing ``pairs``; returns a block
    representative (smallest member index) for every path index."""
    n = len(q.paths)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        a, b = find(i), find(j)
        if a == b:
            return False
        parent[max(a, b)] = min(a, b)
        return True

    idx = q.path_index
    for u, v in pairs:
        union(idx[u], idx[v])
    left, right, first, last = _tables(q)
    changed = True
    while changed:
        changed = False
        groups: dict = {}
        for i in range(n):
            groups.setdefault(find(i), []).append(i)
        for members in groups.values():
            if len(members) < 2:
                continue
            head = members[0]
            for table in (left, right):
                for label, j0 in table[head].items():
                    for i in members[1:]:
                        changed |= union(j0, table[i][label])
            for table in (first, last):
                split: dict = {}
                for i in members:
                    if table[i] is not None:
                        split.setdefault(table[i][0], []).append(table[i][1])
                for rests in split.values():
                    for j in rests[1:]:
                        changed |= union(rests[0], j)
    return [find(i) for i in range(n)]


class HomotopyRelation:
    """A homotopy relation restricted to oriented paths.

    ``pairs`` are the generator pairs it was saturated from; equality and
    hashing use only the partition, through :attr:`key`.
    """

    def __init__(self, quiver: Quiver, pairs, ideal: AdmissibleIdeal = None):
        self.quiver = quiver
        self.pairs = tuple(pairs)
        self.ideal = ideal
        self._rep = saturate(quiver, self.pairs)

    @cached_property
    def blocks(self) -> list:
        """Nontrivial blocks as tuples of paths, in canonical order."""
        groups: dict = {}
        for i, r in enumerate(self._rep):
            groups.setdefault(r, []).append(i)
        paths = self.quiver.paths
        return [tuple(paths[i] for i in g) for g in sorted(groups.values()) if len(g) > 1]

    @cached_property
    def key(self) -> str:
        text = "|".join(",".join(str(p) for p in b) for b in self.blocks)
        return hashlib.sha256(text.encode()).hexdigest()

    def same_block(self, u: Path, v: Path) -> bool:
        idx = self.quiver.path_index
        return self._rep[idx[u]] == self._rep[idx[v]]

    def block_of(self, u: Path) -> tuple:
        r = self._rep[self.quiver.path_index[u]]
        return tuple(p for p, s in zip(self.quiver.paths, self._rep) if s == r)

    @cached_property
    def presentation(self):
        return presentation(self.quiver, self)

    @cached_property
    def abelian_invariants(self):
        return abelianization(self.presentation)

    def __eq__(self, other):
        if not isinstance(other, HomotopyRelation):
            return NotImplemented
        return self.quiver == other.quiver and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        blocks = "; ".join("~".join(str(p) for p in b) for b in self.blocks)
        return f"HomotopyRelation({self.key[:10]}: {blocks or 'discrete'})"


def compute_relation(I: AdmissibleIdeal) -> HomotopyRelation:
    pairs = minimal_relation_partition(I).generator_pairs()
    return HomotopyRelation(I.quiver, pairs, ideal=I)


def _check_parallel(u: Path, v: Path):
    if (u.source, u.target) != (v.source, v.target):
        raise NonParallelError(f"{u} and {v} are not parallel")


def generated_by(base: HomotopyRelation, extra_pairs) -> HomotopyRelation:
    extra = []
    for u, v in extra_pairs:
        u, v = base.quiver.path(u), base.quiver.path(v)
        _check_parallel(u, v)
        extra.append((u, v))
    return HomotopyRelation(base.quiver, base.pairs + tuple(extra))


def is_finer(r1: HomotopyRelation, r2: HomotopyRelation) -> bool:
    """Every block of ``r1`` lies inside a block of ``r2``."""
    return all(len({r2._rep[i] for i in _indices(r1, b)}) == 1 for b in r1.blocks)


def _indices(rel, block):
    idx = rel.quiver.path_index
    return [idx[p] for p in block]


def compare(r1: HomotopyRelation, r2: HomotopyRelation) -> Comparison:
    a, b = is_finer(r1, r2), is_finer(r2, r1)
    if a and b:
        return Comparison.EQUAL
    if a:
        return Comparison.STRICTLY_FINER
    if b:
        return Comparison.STRICTLY_COARSER
    return Comparison.INCOMPARABLE


def are_homotopic(rel: HomotopyRelation, u, v, pi1_context=None, walk_bound=None) -> HomotopyVerdict:
    """Tiered decision of ``u ~ v`` for parallel paths.

    ``pi1_context`` may supply a ready presentation of the fundamental
    group.  ``walk_bound`` caps the word length of the tier-3 search
    (default twice the longest path length; 0 disables it).
    """
    q = rel.quiver
    u, v = q.path(u), q.path(v)
    _check_parallel(u, v)
    if rel.same_block(u, v):
        return HomotopyVerdict(Verdict.HOMOTOPIC, 1)
    pres = pi1_context if pi1_context is not None else rel.presentation
    word = free_reduce(word_of_path(u, pres.tree) + invert_word(word_of_path(v, pres.tree)))
    if not abelian_image_is_trivial(pres, word):
        return HomotopyVerdict(Verdict.NOT_HOMOTOPIC, 2)
    if walk_bound is None:
        walk_bound = 2 * q.longest_path_length
    if walk_bound and bounded_triviality(pres, word, max(walk_bound, len(word))):
        return HomotopyVerdict(Verdict.HOMOTOPIC, 3)
    return HomotopyVerdict(Verdict.UNDETERMINED, 0)
