"""Finite quivers: arrows, oriented paths, walks, bypasses and spanning trees.

Paths are written right-to-left, so ``d*c*b`` means "apply ``b``, then ``c``,
then ``d``".  Internally :attr:`Path.arrows` keeps the written order.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, NamedTuple, Optional

Vertex = Hashable


class QuiverError(ValueError):
    """Structurally invalid quiver (unknown vertex, duplicate label...)."""


class CyclicQuiverError(QuiverError):
    def __init__(self, cycle):
        self.cycle = cycle
        super().__init__("oriented cycle: " + " -> ".join(cycle))


class PathError(ValueError):
    """Arrow sequence that does not compose into a path."""


class Arrow(NamedTuple):
    label: str
    source: Vertex
    target: Vertex


@dataclass(frozen=True)
class Path:
    source: Vertex
    target: Vertex
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e_{self.source}"
        return "*".join(self.arrows)

    def __repr__(self):
        return f"Path({self})"


@dataclass(frozen=True)
class Walk:
    """An unoriented path; ``steps`` are ``(arrow label, +1 | -1)`` in travel order."""

    start: Vertex
    end: Vertex
    steps: tuple = ()

    @classmethod
    def from_path(cls, path: Path) -> "Walk":
        return cls(path.source, path.target, tuple((a, 1) for a in reversed(path.arrows)))

    @classmethod
    def stationary(cls, x: Vertex) -> "Walk":
        return cls(x, x, ())

    def inverse(self) -> "Walk":
        return Walk(self.end, self.start, tuple((a, -s) for a, s in reversed(self.steps)))

    def __add__(self, other: "Walk") -> "Walk":
        # travel self first, then other
        if self.end != other.start:
            raise PathError(f"walks do not compose: {self.end!r} != {other.start!r}")
        return Walk(self.start, other.end, self.steps + other.steps)

    def reduced(self) -> "Walk":
        out = []
        for step in self.steps:
            if out and out[-1][0] == step[0] and out[-1][1] == -step[1]:
                out.pop()
            else:
                out.append(step)
        return Walk(self.start, self.end, tuple(out))

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class Bypass:
    """An arrow together with a different oriented path parallel to it."""

    arrow: str
    detour: Path

    def __str__(self):
        return f"({self.arrow}, {self.detour})"


@dataclass(frozen=True)
class DoubleBypass:
    first: Bypass
    second: Bypass

    def __str__(self):
        a, b = self.first, self.second
        return f"({a.arrow}, {a.detour}, {b.arrow}, {b.detour})"


@dataclass(frozen=True)
class SpanningTree:
    basepoint: Vertex
    tree_arrows: tuple
    chords: tuple
    tree_walks: dict = field(hash=False, compare=False)


class Quiver:
    """A finite quiver with labelled vertices and arrows.

    Construction only checks that labels are distinct and that every arrow
    joins declared vertices; acyclicity and connectedness are checked by
    :meth:`validate` so that :func:`check_acyclic` can report a witness.
    """

    def __init__(self, vertices: Iterable[Vertex], arrows: Iterable):
        self.vertices = tuple(vertices)
        self.arrows = tuple(Arrow(*a) for a in arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex labels are not pairwise distinct")
        seen = set()
        for a in self.arrows:
            if a.label in seen:
                raise QuiverError(f"duplicate arrow label {a.label!r}")
            seen.add(a.label)
            for end in (a.source, a.target):
                if end not in self._vertex_index:
                    raise QuiverError(f"arrow {a.label!r} uses unknown vertex {end!r}")
        self._arrow = {a.label: a for a in self.arrows}

    @cached_property
    def _vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def vertex_index(self, v: Vertex) -> int:
        return self._vertex_index[v]

    def arrow(self, label: str) -> Arrow:
        try:
            return self._arrow[label]
        except KeyError:
            raise PathError(f"unknown arrow {label!r}") from None

    @property
    def arrow_labels(self) -> list:
        return sorted(self._arrow)

    def out_arrows(self, v: Vertex) -> list:
        return sorted((a for a in self.arrows if a.source == v), key=lambda a: a.label)

    def in_arrows(self, v: Vertex) -> list:
        return sorted((a for a in self.arrows if a.target == v), key=lambda a: a.label)

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        arrows = ", ".join(f"{a.label}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver(vertices={list(self.vertices)}, arrows=[{arrows}])"

    # -- paths -----------------------------------------------------------

    def stationary(self, v: Vertex) -> Path:
        if v not in self._vertex_index:
            raise PathError(f"unknown vertex {v!r}")
        return Path(v, v, ())

    def path(self, spec) -> Path:
        """Build a path from ``"d*c*b"``, a label sequence, or ``"e_x"``."""
        if isinstance(spec, Path):
            return spec
        if isinstance(spec, str):
            spec = spec.strip()
            if spec.startswith("e_") and spec not in self._arrow:
                name = spec[2:]
                for v in self.vertices:
                    if str(v) == name:
                        return self.stationary(v)
                raise PathError(f"unknown vertex in {spec!r}")
            labels = [s.strip() for s in spec.split("*")]
        else:
            labels = list(spec)
        if not labels:
            raise PathError("empty arrow sequence; use e_x for stationary paths")
        arrows = [self.arrow(lab) for lab in labels]
        # written order: arrows[i+1] is applied before arrows[i]
        for left, right in zip(arrows, arrows[1:]):
            if right.target != left.source:
                raise PathError(f"{left.label}*{right.label} is not composable")
        return Path(arrows[-1].source, arrows[0].target, tuple(labels))

    def compose(self, left: Path, right: Path) -> Optional[Path]:
        """``left * right`` (apply ``right`` first) or ``None`` when not composable."""
        if right.target != left.source:
            return None
        if not left.arrows:
            return right
        if not right.arrows:
            return left
        return Path(right.source, left.target, left.arrows + right.arrows)

    def path_sort_key(self, p: Path):
        return (len(p.arrows), p.arrows, self._vertex_index[p.source])

    @cached_property
    def _path_table(self):
        ok, cycle = check_acyclic(self)
        if not ok:
            raise CyclicQuiverError(cycle)
        paths = [Path(v, v, ()) for v in self.vertices]
        frontier = list(paths)
        while frontier:
            nxt = []
            for p in frontier:
                for a in self.out_arrows(p.target):
                    q = Path(p.source, a.target, (a.label,) + p.arrows)
                    nxt.append(q)
            paths.extend(nxt)
            frontier = nxt
        paths.sort(key=self.path_sort_key)
        classes = defaultdict(list)
        for p in paths:
            classes[(p.source, p.target)].append(p)
        order = sorted(
            classes, key=lambda st: (self._vertex_index[st[0]], self._vertex_index[st[1]])
        )
        return paths, {st: classes[st] for st in order}

    @property
    def paths(self) -> list:
        """Every oriented path, in the canonical (length, labels) order."""
        return self._path_table[0]

    @property
    def parallel_classes(self) -> dict:
        """``(source, target) -> paths`` for every nonempty parallel class."""
        return self._path_table[1]

    @cached_property
    def path_index(self) -> dict:
        return {p: i for i, p in enumerate(self.paths)}

    @cached_property
    def class_index(self) -> dict:
        """``path -> position`` inside its parallel class."""
        out = {}
        for members in self.parallel_classes.values():
            for i, p in enumerate(members):
                out[p] = i
        return out

    @cached_property
    def longest_path_length(self) -> int:
        return max(len(p) for p in self.paths)

    def validate(self) -> None:
        """Raise unless the quiver is connected and has no oriented cycle."""
        ok, cycle = check_acyclic(self)
        if not ok:
            raise CyclicQuiverError(cycle)
        if not is_connected(self):
            raise QuiverError("the underlying graph is not connected")


def check_acyclic(q: Quiver):
    """Return ``(True, None)`` or ``(False, cycle)`` with the cycle as arrow labels
    in travel order."""
    state = {v: 0 for v in q.vertices}  # 0 new, 1 on stack, 2 done
    via: dict = {}
    for root in q.vertices:
        if state[root]:
            continue
        stack = [(root, iter(q.out_arrows(root)))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            a = next(it, None)
            if a is None:
                state[v] = 2
                stack.pop()
                continue
            w = a.target
            if state[w] == 1:
                cycle = [a.label]
                x = v
                while x != w:
                    arr = via[x]
                    cycle.append(arr.label)
                    x = arr.source
                return False, list(reversed(cycle))
            if state[w] == 0:
                state[w] = 1
                via[w] = a
                stack.append((w, iter(q.out_arrows(w))))
    return True, None


def is_connected(q: Quiver) -> bool:
    if not q.vertices:
        return True
    adj = defaultdict(set)
    for a in q.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen = {q.vertices[0]}
    todo = [q.vertices[0]]
    while todo:
        v = todo.pop()
        for w in adj[v] - seen:
            seen.add(w)
            todo.append(w)
    return len(seen) == len(q.vertices)


def enumerate_paths(q: Quiver, min_len: int = 0) -> dict:
    """Oriented paths of length ``>= min_len`` grouped by parallel class."""
    out = {}
    for st, members in q.parallel_classes.items():
        keep = [p for p in members if len(p) >= min_len]
        if keep:
            out[st] = keep
    return out


def enumerate_bypasses(q: Quiver) -> list:
    out = []
    for a in sorted(q.arrows, key=lambda a: a.label):
        for p in q.parallel_classes.get((a.source, a.target), []):
            if p.arrows != (a.label,):
                out.append(Bypass(a.label, p))
    return out


def detect_double_bypasses(q: Quiver) -> list:
    bypasses = enumerate_bypasses(q)
    by_arrow = defaultdict(list)
    for b in bypasses:
        by_arrow[b.arrow].append(b)
    out = []
    for first in bypasses:
        for beta in dict.fromkeys(first.detour.arrows):
            for second in by_arrow.get(beta, []):
                out.append(DoubleBypass(first, second))
    return out


def spanning_tree(q: Quiver, basepoint: Optional[Vertex] = None) -> SpanningTree:
    """Breadth-first spanning tree, ties broken by arrow label."""
    if basepoint is None:
        basepoint = q.vertices[0]
    if basepoint not in q._vertex_index:
        raise QuiverError(f"unknown basepoint {basepoint!r}")
    incident = defaultdict(list)
    for a in q.arrows:
        incident[a.source].append(a)
        if a.target != a.source:
            incident[a.target].append(a)
    walks = {basepoint: Walk.stationary(basepoint)}
    tree = []
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for a in sorted(incident[v], key=lambda a: a.label):
            if a.source == v and a.target not in walks:
                w, step = a.target, (a.label, 1)
            elif a.target == v and a.source not in walks:
                w, step = a.source, (a.label, -1)
            else:
                continue
            walks[w] = walks[v] + Walk(v, w, (step,))
            tree.append(a.label)
            queue.append(w)
    if len(walks) != len(q.vertices):
        raise QuiverError("the underlying graph is not connected")
    tree_set = set(tree)
    chords = tuple(sorted(a.label for a in q.arrows if a.label not in tree_set))
    return SpanningTree(basepoint, tuple(sorted(tree)), chords, walks)
