"""Fundamental groups of bound quivers as finite presentations.

Generators are the chords of a spanning tree; a word is a tuple of
``(chord label, +1 | -1)``.  Relators come from homotopy generator pairs
``(u, v)`` as ``word(u) word(v)^-1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .quiver import Path, Quiver, SpanningTree, Walk, spanning_tree


# -- words ---------------------------------------------------------------

def free_reduce(word) -> tuple:
    out = []
    for g in word:
        if out and out[-1][0] == g[0] and out[-1][1] == -g[1]:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def cyclic_reduce(word) -> tuple:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word) -> tuple:
    return tuple((g, -e) for g, e in reversed(word))


def format_word(word) -> str:
    if not word:
        return "1"
    return " ".join(g if e == 1 else f"{g}^-1" for g, e in word)


def word_of_walk(walk: Walk, tree: SpanningTree) -> tuple:
    """Based-loop word of ``walk``: tree arrows vanish, chords become
    generators, and the walk is closed up by the tree walks to the basepoint."""
    chords = set(tree.chords)
    loop = tree.tree_walks[walk.start] + walk + tree.tree_walks[walk.end].inverse()
    return free_reduce(tuple((a, s) for a, s in loop.steps if a in chords))


def word_of_path(path: Path, tree: SpanningTree) -> tuple:
    return word_of_walk(Walk.from_path(path), tree)


# -- presentations -------------------------------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple
    basepoint: object
    tree: SpanningTree = field(compare=False, repr=False)

    def __str__(self):
        gens = ", ".join(self.generators)
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def presentation(q: Quiver, rel, basepoint=None, tree: Optional[SpanningTree] = None) -> GroupPresentation:
    """Presentation of pi_1(Q, I) from the generator pairs of ``rel``."""
    if tree is None:
        tree = spanning_tree(q, basepoint)
    relators = {}
    for u, v in rel.pairs:
        w = free_reduce(word_of_path(u, tree) + invert_word(word_of_path(v, tree)))
        if w:
            relators.setdefault(w, None)
    return GroupPresentation(tree.chords, tuple(relators), tree.basepoint, tree)


# -- Smith normal form ---------------------------------------------------

def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M):
    """Return ``(diagonal, U, V)`` with ``U * M * V`` diagonal, ``U`` and ``V``
    unimodular and each diagonal entry dividing the next.

    ``diagonal`` has ``min(rows, cols)`` entries, all nonnegative.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A, V):
            for row in R:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        for R in (A, U):
            R[dst] = [x + c * y for x, y in zip(R[dst], R[src])]

    def add_col(dst, src, c):
        for R in (A, V):
            for row in R:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    diag = [A[i][i] for i in range(min(m, n))]
    return diag, U, V


# -- abelianization ------------------------------------------------------

@dataclass(frozen=True)
class AbelianInvariants:
    rank: int
    torsion: tuple = ()

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("ℤ")
        elif self.rank > 1:
            parts.append(f"ℤ^{self.rank}")
        parts += [f"ℤ/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) or "0"


def exponent_matrix(p: GroupPresentation) -> list:
    col = {g: j for j, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for g, e in r:
            row[col[g]] += e
        rows.append(row)
    return rows


def abelianization(p: GroupPresentation) -> AbelianInvariants:
    rows = exponent_matrix(p)
    if not rows or not p.generators:
        return AbelianInvariants(len(p.generators))
    diag, _, _ = smith_normal_form(rows)
    nonzero = [d for d in diag if d]
    return AbelianInvariants(len(p.generators) - len(nonzero), tuple(d for d in nonzero if d > 1))


def abelian_image_is_trivial(p: GroupPresentation, word) -> bool:
    """Whether ``word`` dies in the abelianization of ``p``."""
    col = {g: j for j, g in enumerate(p.generators)}
    x = [0] * len(p.generators)
    for g, e in word:
        x[col[g]] += e
    rows = exponent_matrix(p)
    if not rows:
        return not any(x)
    diag, _, V = smith_normal_form(rows)
    y = [sum(x[i] * V[i][j] for i in range(len(x))) for j in range(len(x))]
    for j, yj in enumerate(y):
        d = diag[j] if j < len(diag) else 0
        if (d == 0 and yj) or (d and yj % d):
            return False
    return True


def bounded_triviality(p: GroupPresentation, word, max_len: int, max_states: int = 20000) -> bool:
    """Search for a derivation of ``word = 1`` by inserting conjugates of
    relators, never passing through words longer than ``max_len``.

    ``True`` is a proof of triviality; ``False`` only means none was found.
    """
    start = free_reduce(word)
    if not start:
        return True
    pieces = set()
    for r in p.relators:
        for s in (r, invert_word(r)):
            for i in range(len(s)):
                pieces.add(s[i:] + s[:i])
    pieces = sorted(pieces)
    seen = {start}
    todo = deque([start])
    while todo and len(seen) < max_states:
        w = todo.popleft()
        for piece in pieces:
            for i in range(len(w) + 1):
                nxt = free_reduce(w[:i] + piece + w[i:])
                if not nxt:
                    return True
                if len(nxt) <= max_len and nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
    return False


# -- identification ------------------------------------------------------

@dataclass(frozen=True)
class GroupDescriptor:
    text: str
    short: str
    certified: bool

    def __str__(self):
        return self.text


def _eliminate(generators, relators):
    """Tietze eliminations of generators that occur once in some relator."""
    gens = list(generators)
    rels = [w for w in (cyclic_reduce(r) for r in relators) if w]
    progress = True
    while progress:
        progress = False
        for ri, r in enumerate(rels):
            counts = {}
            for g, _ in r:
                counts[g] = counts.get(g, 0) + 1
            g = next((g for g in gens if counts.get(g) == 1), None)
            if g is None:
                continue
            i = next(i for i, (h, _) in enumerate(r) if h == g)
            e = r[i][1]
            rest = r[i + 1:] + r[:i]
            value = rest if e == -1 else invert_word(rest)
            new = []
            for k, s in enumerate(rels):
                if k == ri:
                    continue
                out = []
                for h, f in s:
                    if h == g:
                        out.extend(value if f == 1 else invert_word(value))
                    else:
                        out.append((h, f))
                w = cyclic_reduce(out)
                if w:
                    new.append(w)
            gens.remove(g)
            rels = new
            progress = True
            break
    return gens, rels


def identify(inv: AbelianInvariants, p: GroupPresentation) -> GroupDescriptor:
    """Name the group only when the name is certified."""
    gens, rels = _eliminate(p.generators, p.relators)
    if not rels:
        n = len(gens)
        if n == 0:
            return GroupDescriptor("trivial", "0", True)
        if n == 1:
            return GroupDescriptor("free of rank 1 (ℤ)", "ℤ", True)
        return GroupDescriptor(f"free of rank {n}", f"F_{n}", True)
    if len(gens) <= 1:
        # cyclic, hence equal to its abelianization
        if inv.is_trivial:
            return GroupDescriptor("trivial", "0", True)
        return GroupDescriptor(f"{inv} (abelianization-level)", str(inv), True)
    return GroupDescriptor(
        f"unidentified {p}; abelianization {inv}", f"G[ab={inv}]", False
    )
