"""The quiver of homotopy relations connected by transvections.

Vertices are homotopy relations of presentations in the transvection orbit
of a starting ideal; an arrow ``~ -> ~'`` records a transvection turning a
non-homotopic bypass pair homotopic, always oriented from the finer to the
coarser relation.
"""

from __future__ import annotations

import enum
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Automorphism, Dilatation, apply_automorphism
from .ideal import AdmissibleIdeal, image
from .homotopy import (
    Comparison,
    HomotopyRelation,
    HomotopyVerdict,
    Verdict,
    are_homotopic,
    compare,
    compute_relation,
    generated_by,
)
from .pi1 import identify
from .quiver import Bypass, detect_double_bypasses, enumerate_bypasses

log = logging.getLogger(__name__)

DEFAULT_CAP = 16


class ZeroTauError(ValueError):
    pass


class LemmaViolation(AssertionError):
    """Both bypass predicates are false but the ideal moved."""


class Case(enum.Enum):
    SAME_RELATION = "a"
    FORWARD_EDGE = "b"
    BACKWARD_EDGE = "b-reverse"
    IDENTICAL_IDEAL = "c"
    INCONCLUSIVE = "inconclusive"


@dataclass
class TransvectionEffect:
    case: Case
    bypass: Bypass
    tau: object
    ideal: AdmissibleIdeal
    image: AdmissibleIdeal
    relation: HomotopyRelation
    image_relation: HomotopyRelation
    before: HomotopyVerdict  # alpha ~_I u
    after: HomotopyVerdict  # alpha ~_J u


class _RelationCache(dict):
    def of(self, I: AdmissibleIdeal) -> HomotopyRelation:
        key = I.key()
        rel = self.get(key)
        if rel is None:
            rel = self[key] = compute_relation(I)
        return rel


def classify_transvection_effect(I: AdmissibleIdeal, bypass: Bypass, tau, cache=None) -> TransvectionEffect:
    tau = I.field(tau)
    if not tau:
        raise ZeroTauError("tau = 0 gives the identity map")
    cache = cache if cache is not None else _RelationCache()
    J = image(Automorphism.transvection(bypass, tau), I)
    rel_i, rel_j = cache.of(I), cache.of(J)
    alpha = I.quiver.path([bypass.arrow])
    before = are_homotopic(rel_i, alpha, bypass.detour)
    after = are_homotopic(rel_j, alpha, bypass.detour)
    undetermined = Verdict.UNDETERMINED
    if before.verdict is undetermined or after.verdict is undetermined:
        case = Case.INCONCLUSIVE
    elif before and after:
        case = Case.SAME_RELATION
    elif after:
        case = Case.FORWARD_EDGE
    elif before:
        case = Case.BACKWARD_EDGE
    else:
        case = Case.IDENTICAL_IDEAL
        if I != J:
            raise LemmaViolation(
                f"{bypass} with tau={tau}: neither {I} nor {J} identifies the pair, yet the ideals differ"
            )
    return TransvectionEffect(case, bypass, tau, I, J, rel_i, rel_j, before, after)


def tau_candidates(I: AdmissibleIdeal, bypass: Bypass) -> list:
    """Values of tau at which an entry of the transformed basis vanishes.

    Each transformed basis vector is ``b + tau * b'``; entries are affine in
    tau and the support pattern can only change at their roots.
    """
    phi = Automorphism.transvection(bypass, 1)
    roots = set()
    for b in I.basis():
        shift = apply_automorphism(phi, b) - b
        for p, c in shift.terms.items():
            root = -b.terms.get(p, I.field.zero) / c
            if root:
                roots.add(root)
    return sorted(roots)


def default_tau_set(field) -> list:
    if field.characteristic:
        return field.nonzero_elements()
    return [field(1), field(-1)]


@dataclass
class GammaVertex:
    key: str
    relation: HomotopyRelation
    ideals: list
    presentation: object = None
    invariants: object = None
    descriptor: object = None


@dataclass
class GammaEdge:
    source: str
    target: str
    bypass: Bypass
    tau: object
    duplicates: int = 0

    @property
    def label(self) -> str:
        return f"φ_{{{self.bypass.arrow},{self.bypass.detour},{self.tau}}}"


@dataclass
class GammaGraph:
    quiver: object
    field: object
    start: str
    vertices: dict = field(default_factory=dict)
    edges: dict = field(default_factory=dict)
    tau_set: list = field(default_factory=list)
    depth: Optional[int] = None
    cap: int = DEFAULT_CAP
    exhausted: bool = False
    bypass_count: int = 0
    warnings: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    cases: Counter = field(default_factory=Counter)
    ideals_seen: int = 0

    def successors(self, key) -> list:
        return [e.target for e in self.edges.values() if e.source == key]

    def in_degree(self, key) -> int:
        return sum(1 for e in self.edges.values() if e.target == key)


def _add_vertex(g: GammaGraph, rel: HomotopyRelation, I: AdmissibleIdeal) -> GammaVertex:
    v = g.vertices.get(rel.key)
    if v is None:
        pres = rel.presentation
        inv = rel.abelian_invariants
        v = g.vertices[rel.key] = GammaVertex(rel.key, rel, [], pres, inv, identify(inv, pres))
    return v


def _add_edge(g: GammaGraph, finer: HomotopyRelation, coarser: HomotopyRelation, bypass, tau):
    pair = (finer.key, coarser.key)
    if pair in g.edges:
        g.edges[pair].duplicates += 1
        return
    alpha = finer.quiver.path([bypass.arrow])
    if compare(finer, coarser) is not Comparison.STRICTLY_FINER:
        g.violations.append(f"edge {bypass} tau={tau}: source is not strictly finer than target")
        return
    if generated_by(finer, [(alpha, bypass.detour)]) != coarser:
        g.violations.append(f"edge {bypass} tau={tau}: target is not generated by source and the bypass pair")
        return
    g.edges[pair] = GammaEdge(finer.key, coarser.key, bypass, tau)


def explore(I0: AdmissibleIdeal, tau_set=None, depth: Optional[int] = None, cap: int = DEFAULT_CAP,
            solve_tau: bool = True) -> GammaGraph:
    """Breadth-first exploration of the transvection orbit of ``I0``.

    Every relation keeps at most ``cap`` representative ideals; only newly
    retained ideals are expanded, so the search always terminates.  ``depth``
    optionally bounds the number of breadth-first levels.
    """
    q, k = I0.quiver, I0.field
    taus = [k(t) for t in (tau_set if tau_set is not None else default_tau_set(k))]
    if any(not t for t in taus):
        raise ZeroTauError("tau = 0 gives the identity map")
    bypasses = enumerate_bypasses(q)
    cache = _RelationCache()
    rel0 = cache.of(I0)
    g = GammaGraph(q, k, rel0.key, tau_set=taus, depth=depth, cap=cap, bypass_count=len(bypasses))
    doubles = detect_double_bypasses(q)
    if doubles:
        g.warnings.append(
            f"quiver has {len(doubles)} double bypass(es); the good properties of the graph are not guaranteed"
        )
    p = k.characteristic
    if p and len(bypasses) >= p:
        g.warnings.append(
            f"char {p} with m = {len(bypasses)} bypasses: hypothesis m < p fails; sources need not be unique"
        )
    _add_vertex(g, rel0, I0).ideals.append(I0)
    seen = {I0.key()}
    frontier = [I0]
    level = 0
    while frontier and (depth is None or level < depth):
        nxt = []
        for I in frontier:
            for bp in bypasses:
                extra = tau_candidates(I, bp) if solve_tau else []
                for tau in list(dict.fromkeys(taus + extra)):
                    eff = classify_transvection_effect(I, bp, tau, cache)
                    g.cases[eff.case] += 1
                    J = eff.image
                    v = _add_vertex(g, eff.image_relation, J)
                    jkey = J.key()
                    if jkey not in seen:
                        seen.add(jkey)
                        if len(v.ideals) < cap:
                            v.ideals.append(J)
                            nxt.append(J)
                    if eff.case is Case.INCONCLUSIVE:
                        g.inconclusive.append((str(I), str(bp), str(tau)))
                    elif eff.case is Case.FORWARD_EDGE:
                        _add_edge(g, eff.relation, eff.image_relation, bp, tau)
                    elif eff.case is Case.BACKWARD_EDGE:
                        _add_edge(g, eff.image_relation, eff.relation, bp, -tau)
                    elif eff.case is Case.SAME_RELATION and eff.relation != eff.image_relation:
                        g.violations.append(f"{bp} tau={tau}: pair homotopic on both sides but relations differ")
        frontier = nxt
        level += 1
        log.debug("level %d: %d vertices, %d edges, %d new ideals", level, len(g.vertices), len(g.edges), len(nxt))
    g.exhausted = not frontier
    g.ideals_seen = len(seen)
    return g


def find_sources(g: GammaGraph) -> list:
    targets = {e.target for e in g.edges.values()}
    return [key for key in g.vertices if key not in targets]


def _longest_path(g: GammaGraph):
    """Length of the longest oriented path, or ``None`` if there is a cycle."""
    indeg = {v: 0 for v in g.vertices}
    for e in g.edges.values():
        indeg[e.target] += 1
    order = [v for v, d in indeg.items() if d == 0]
    dist = {v: 0 for v in g.vertices}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w in g.successors(v):
            dist[w] = max(dist[w], dist[v] + 1)
            indeg[w] -= 1
            if indeg[w] == 0:
                order.append(w)
    if len(order) != len(g.vertices):
        return None
    return max(dist.values(), default=0)


def _connected(g: GammaGraph) -> bool:
    if not g.vertices:
        return True
    adj = {v: set() for v in g.vertices}
    for e in g.edges.values():
        adj[e.source].add(e.target)
        adj[e.target].add(e.source)
    start = next(iter(g.vertices))
    seen = {start}
    todo = [start]
    while todo:
        for w in adj[todo.pop()] - seen:
            seen.add(w)
            todo.append(w)
    return len(seen) == len(g.vertices)


def verify_properties(g: GammaGraph, m: Optional[int] = None) -> dict:
    m = g.bypass_count if m is None else m
    longest = _longest_path(g)
    out_deg = Counter(e.source for e in g.edges.values())
    max_out = max(out_deg.values(), default=0)
    bound = sum(m ** i for i in range(m + 1))
    return {
        "exhaustive": g.exhausted,
        "acyclic": longest is not None,
        "connected": _connected(g),
        "max_out_degree": max_out,
        "out_degree_ok": max_out <= m,
        "longest_path": longest,
        "path_length_ok": longest is not None and longest <= m,
        "vertex_count": len(g.vertices),
        "vertex_bound": bound,
        "vertex_bound_ok": len(g.vertices) <= bound,
    }


def properties_hold(checks: dict) -> bool:
    return all(checks[k] for k in ("acyclic", "connected", "out_degree_ok", "path_length_ok", "vertex_bound_ok"))


def path_from_sources(g: GammaGraph, target: str) -> Optional[list]:
    """Shortest oriented path ending at ``target`` whose start is a source."""
    sources = find_sources(g)
    prev = {s: None for s in sources}
    todo = deque(sources)
    while todo:
        v = todo.popleft()
        if v == target:
            path = []
            while v is not None:
                path.append(v)
                v = prev[v]
            return path[::-1]
        for w in g.successors(v):
            if w not in prev:
                prev[w] = v
                todo.append(w)
    return None


def theorem_report(g: GammaGraph) -> dict:
    """Sources, uniqueness, and the chain of surjections from the source to
    every other vertex, checked at the presentation level."""
    sources = find_sources(g)
    report = {
        "sources": sources,
        "unique_source": len(sources) == 1,
        "source_groups": {s: str(g.vertices[s].descriptor) for s in sources},
        "chains": [],
        "warnings": list(g.warnings),
        "truncated": not g.exhausted,
        "inconclusive": len(g.inconclusive),
    }
    if not g.exhausted:
        report["warnings"].append("exploration truncated; results hold on the explored subgraph only")
    for key, vertex in g.vertices.items():
        if key in sources:
            continue
        path = path_from_sources(g, key)
        if path is None:
            continue
        rel = g.vertices[path[0]].relation
        nested = True
        for s, t in zip(path, path[1:]):
            e = g.edges[(s, t)]
            nxt = generated_by(rel, [(rel.quiver.path([e.bypass.arrow]), e.bypass.detour)])
            nested &= set(rel.presentation.relators) <= set(nxt.presentation.relators)
            nested &= nxt == g.vertices[t].relation
            rel = nxt
        groups = [g.vertices[v].descriptor.short for v in path]
        report["chains"].append({
            "target": key,
            "path": path,
            "groups": groups,
            "surjections": " ↠ ".join(groups),
            "presentation_level": nested,
        })
    return report


# -- automorphism search -------------------------------------------------

def _solve_dilatation(F: AdmissibleIdeal, K: AdmissibleIdeal) -> Optional[Automorphism]:
    """A dilatation carrying ``F`` onto ``K``, when a greedy solve finds one."""
    if [(st, s.pivots) for st, s in F.spaces.items()] != [(st, s.pivots) for st, s in K.spaces.items()]:
        return None
    q, k = F.quiver, F.field
    equations = []
    for st, space in F.spaces.items():
        members = q.parallel_classes[st]
        for row_f, row_k, piv in zip(space.rows, K.spaces[st].rows, space.pivots):
            for j, (a, b) in enumerate(zip(row_f, row_k)):
                if bool(a) != bool(b):
                    return None
                if a and j != piv:
                    exps = Counter(members[j].arrows)
                    exps.subtract(members[piv].arrows)
                    equations.append(({x: e for x, e in exps.items() if e}, b / a))
    scal: dict = {}
    pending = list(equations)
    while pending:
        progress = False
        rest = []
        for exps, ratio in pending:
            unknown = [x for x in exps if x not in scal]
            if len(unknown) == 1:
                x = unknown[0]
                val = ratio
                for y, e in exps.items():
                    if y != x:
                        val = val / scal[y] ** e if e > 0 else val * scal[y] ** (-e)
                scal[x] = val if exps[x] == 1 else 1 / val
                progress = True
            elif unknown:
                rest.append((exps, ratio))
        if not progress and rest:
            scal[next(x for x in rest[0][0] if x not in scal)] = k.one
        pending = rest
    if not scal or any(not c for c in scal.values()):
        return None
    phi = Automorphism((Dilatation.of(scal),))
    return phi if image(phi, F) == K else None


def find_automorphism(I: AdmissibleIdeal, J: AdmissibleIdeal, tau_set=None, depth: int = 2):
    """Bounded bidirectional search for ``phi`` with ``image(phi, I) == J``.

    Returns ``(phi, None)`` or ``(None, reason)``; a missing witness is not a
    proof that the quotients are non-isomorphic.
    """
    if I.dimension != J.dimension:
        return None, "different quotient dimensions"
    if I == J:
        return Automorphism.identity(), None
    k = I.field
    taus = [k(t) for t in (tau_set if tau_set is not None else default_tau_set(k))]
    taus = list(dict.fromkeys(taus + [-t for t in taus]))
    bypasses = enumerate_bypasses(I.quiver)
    fwd = {I.key(): (I, Automorphism.identity())}
    bwd = {J.key(): (J, Automorphism.identity())}
    f_front, b_front = [I.key()], [J.key()]

    def meet():
        for key, (F, phi) in fwd.items():
            if key in bwd:
                return bwd[key][1].inverse() @ phi
        for F, phi in fwd.values():
            for K, psi in bwd.values():
                d = _solve_dilatation(F, K)
                if d is not None:
                    return psi.inverse() @ d @ phi
        return None

    found = meet()
    for _ in range(depth):
        if found is not None:
            break
        for table, front_name in ((fwd, "f"), (bwd, "b")):
            front = f_front if front_name == "f" else b_front
            new_front = []
            for key in front:
                X, phi = table[key]
                for bp in bypasses:
                    for tau in taus:
                        step = Automorphism.transvection(bp, tau)
                        Y = image(step, X)
                        ykey = Y.key()
                        if ykey not in table:
                            table[ykey] = (Y, step @ phi)
                            new_front.append(ykey)
            if front_name == "f":
                f_front = new_front
            else:
                b_front = new_front
            found = meet()
            if found is not None:
                break
    if found is None:
        return None, "bound exhausted"
    assert image(found, I) == J
    return found, None


def to_dot(g: GammaGraph) -> str:
    lines = ["digraph Gamma {", "  rankdir=TB;"]
    for key, v in g.vertices.items():
        label = f"{key[:8]}\\n{v.descriptor.short}"
        lines.append(f'  "{key}" [label="{label}"];')
    for e in g.edges.values():
        lines.append(f'  "{e.source}" -> "{e.target}" [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
