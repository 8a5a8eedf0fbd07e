"""Admissible ideals of kQ stored as graded subspaces.

For an acyclic quiver kQ is finite dimensional and every two-sided ideal is
graded by parallel classes, so an ideal is fully described by one reduced row
echelon matrix per class (x, y) over the canonically ordered paths x -> y.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .algebra import AlgebraElement, Automorphism, apply_automorphism
from .field import Field
from .linalg import EchelonSpace
from .quiver import Quiver


class AdmissibilityError(ValueError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"not admissible: {element} has support on a path of length < 2")


class AdmissibleIdeal:
    """A two-sided ideal I with I contained in (kQ+)^2 (acyclic Q).

    Build with :func:`from_generators`.  ``spaces`` maps each parallel class
    with a nonzero component to its :class:`EchelonSpace`.
    """

    def __init__(self, quiver: Quiver, field: Field, generators, spaces: dict):
        self.quiver = quiver
        self.field = field
        self.generators = tuple(generators)
        self.spaces = {st: spaces[st] for st in quiver.parallel_classes if st in spaces and len(spaces[st])}

    @property
    def dimension(self) -> int:
        return sum(len(s) for s in self.spaces.values())

    def key(self) -> tuple:
        return (self.field.characteristic,) + tuple((st, s.key()) for st, s in self.spaces.items())

    def __eq__(self, other):
        if not isinstance(other, AdmissibleIdeal):
            return NotImplemented
        return self.quiver == other.quiver and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def class_rows(self, st) -> list:
        space = self.spaces.get(st)
        return list(space.rows) if space else []

    def basis(self) -> list:
        """The RREF rows as algebra elements, class by class."""
        out = []
        for st, space in self.spaces.items():
            members = self.quiver.parallel_classes[st]
            for row in space.rows:
                out.append(
                    AlgebraElement._raw(self.quiver, self.field, {p: c for p, c in zip(members, row) if c})
                )
        return out

    def contains(self, x: AlgebraElement) -> bool:
        return contains(self, x)

    def __str__(self):
        gens = ", ".join(str(g) for g in self.basis())
        return f"<{gens}>"

    def __repr__(self):
        return f"AdmissibleIdeal({self}, {self.field})"


def _vector(q: Quiver, k: Field, st, element: AlgebraElement) -> list:
    vec = [k.zero] * len(q.parallel_classes[st])
    idx = q.class_index
    for p, c in element.terms.items():
        vec[idx[p]] = c
    return vec


def from_generators(q: Quiver, k: Field, gens) -> AdmissibleIdeal:
    """Two-sided closure of ``gens`` as a graded subspace.

    Closure proceeds breadth-first by multiplying new basis vectors with
    single arrows on either side until nothing new is added.
    """
    gens = list(gens)
    classes = q.parallel_classes
    idx = q.class_index
    spaces: dict = {}
    queue: deque = deque()
    for g in gens:
        if g.quiver != q or g.field != k:
            raise ValueError("generator does not belong to this path algebra")
        for st, comp in g.components().items():
            if any(len(p) < 2 for p in comp.terms):
                raise AdmissibilityError(g)
            queue.append((st, _vector(q, k, st, comp)))

    while queue:
        st, vec = queue.popleft()
        space = spaces.get(st)
        if space is None:
            space = spaces[st] = EchelonSpace(len(classes[st]), k.zero)
        if not space.add(vec):
            continue
        src, tgt = st
        members = classes[st]
        for a in q.out_arrows(tgt):
            new_st = (src, a.target)
            out = [k.zero] * len(classes[new_st])
            for p, c in zip(members, vec):
                if c:
                    out[idx[q.compose(q.path([a.label]), p)]] = c
            queue.append((new_st, out))
        for a in q.in_arrows(src):
            new_st = (a.source, tgt)
            out = [k.zero] * len(classes[new_st])
            for p, c in zip(members, vec):
                if c:
                    out[idx[q.compose(p, q.path([a.label]))]] = c
            queue.append((new_st, out))
    return AdmissibleIdeal(q, k, gens, spaces)


def contains(I: AdmissibleIdeal, x: AlgebraElement) -> bool:
    for st, comp in x.components().items():
        space = I.spaces.get(st)
        if space is None or not space.contains(_vector(I.quiver, I.field, st, comp)):
            return False
    return True


def equals(I: AdmissibleIdeal, J: AdmissibleIdeal) -> bool:
    return I == J


def image(phi: Automorphism, I: AdmissibleIdeal) -> AdmissibleIdeal:
    J = from_generators(I.quiver, I.field, [apply_automorphism(phi, g) for g in I.generators])
    assert J.dimension == I.dimension, "automorphism changed the ideal dimension"
    return J


# -- minimal relations ---------------------------------------------------

UNTOUCHED = "untouched"
ZERO = "zero-relation"
LINKED = "linked"


@dataclass(frozen=True)
class Block:
    paths: tuple
    kind: str


@dataclass(frozen=True)
class MinimalRelationPartition:
    blocks: dict  # (source, target) -> tuple of Block

    def linked_blocks(self) -> list:
        return [b for bl in self.blocks.values() for b in bl if b.kind == LINKED]

    def generator_pairs(self) -> list:
        """Pairs (first path of block, other path) for every linked block."""
        return [(b.paths[0], p) for b in self.linked_blocks() for p in b.paths[1:]]


def support_components(rows, n: int) -> list:
    """Connected components of the hypergraph on ``range(n)`` whose edges are
    the row supports.  Each component is a sorted tuple; isolated coordinates
    are singletons."""
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for row in rows:
        sup = [j for j, c in enumerate(row) if c]
        for j in sup[1:]:
            a, b = find(sup[0]), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps: dict = {}
    for j in range(n):
        comps.setdefault(find(j), []).append(j)
    return [tuple(c) for c in comps.values()]


def minimal_relation_partition(I: AdmissibleIdeal) -> MinimalRelationPartition:
    """Finest support-disjoint splitting of each class component of I.

    Two paths share a block exactly when they are chained by minimal
    relations, so the linked blocks carry the same identifications as the
    (possibly exponentially many) minimal relations themselves.
    """
    q = I.quiver
    out = {}
    for st, members in q.parallel_classes.items():
        rows = I.class_rows(st)
        singles = {next(j for j, c in enumerate(r) if c) for r in rows if sum(1 for c in r if c) == 1}
        blocks = []
        for comp in support_components(rows, len(members)):
            paths = tuple(members[j] for j in comp)
            if len(comp) > 1:
                kind = LINKED
            elif comp[0] in singles:
                kind = ZERO
            else:
                kind = UNTOUCHED
            blocks.append(Block(paths, kind))
        out[st] = tuple(blocks)
    return MinimalRelationPartition(out)
