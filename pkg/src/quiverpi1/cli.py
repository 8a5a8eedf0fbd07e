"""Command-line front end: ``quiver-pi1 {validate,pi1,gamma,compare}``.

Exit codes: 0 success (unique source), 1 validation failure, 2 unknown
ideal, 3 several sources, 4 inconclusive homotopy verdicts.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import gamma as gm
from .homotopy import compare, compute_relation
from .ideal import AdmissibilityError, from_generators, minimal_relation_partition
from .io import InputDocument, ParseError, load
from .pi1 import abelianization, format_word, identify, presentation
from .quiver import (
    QuiverError,
    check_acyclic,
    detect_double_bypasses,
    enumerate_bypasses,
    is_connected,
    spanning_tree,
)

SCHEMA = "quiver-pi1/1"

EXIT_OK, EXIT_INVALID, EXIT_LOOKUP, EXIT_MULTIPLE, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class LookupFailure(KeyError):
    pass


def _report(command: str, **fields) -> dict:
    return {"schema": SCHEMA, "command": command, **fields}


def _ideal(doc: InputDocument, name: str):
    if name not in doc.ideals:
        raise LookupFailure(name)
    doc.quiver.validate()
    return from_generators(doc.quiver, doc.field, doc.ideals[name])


def _char_warning(doc: InputDocument, m: int):
    p = doc.field.characteristic
    if p and p <= m:
        return f"car(k)={p} ≤ m={m}: the unique-source hypothesis m < p is not met"
    return None


def cmd_validate(doc: InputDocument):
    q = doc.quiver
    acyclic, cycle = check_acyclic(q)
    connected = is_connected(q)
    rep = _report("validate", field=str(doc.field), acyclic=acyclic, cycle=cycle, connected=connected)
    warnings = []
    ok = acyclic and connected
    if not acyclic:
        rep["error"] = "oriented cycle: " + " -> ".join(cycle)
    elif not connected:
        rep["error"] = "the underlying graph is not connected"
    if acyclic:
        bypasses = enumerate_bypasses(q)
        doubles = detect_double_bypasses(q)
        rep["bypasses"] = [[b.arrow, str(b.detour)] for b in bypasses]
        rep["m"] = len(bypasses)
        rep["double_bypasses"] = [str(d) for d in doubles]
        rep["parallel_arrows"] = sorted(
            {tuple(sorted((d.first.arrow, d.second.arrow))) for d in doubles if len(d.first.detour) == 1}
        )
        rep["parallel_arrows"] = [list(p) for p in rep["parallel_arrows"]]
        if doubles:
            warnings.append(f"{len(doubles)} double bypass(es) present")
        w = _char_warning(doc, len(bypasses))
        if w:
            warnings.append(w)
        ideals = {}
        for name, gens in doc.ideals.items():
            try:
                I = from_generators(q, doc.field, gens)
                ideals[name] = {"admissible": True, "dimension": I.dimension}
            except AdmissibilityError as e:
                ideals[name] = {"admissible": False, "error": str(e)}
                ok = False
        rep["ideals"] = ideals
    rep["warnings"] = warnings
    rep["ok"] = ok
    return rep, EXIT_OK if ok else EXIT_INVALID


def _pi1_fields(doc, I, basepoint=None) -> dict:
    rel = compute_relation(I)
    tree = spanning_tree(doc.quiver, basepoint)
    pres = presentation(doc.quiver, rel, tree=tree)
    inv = abelianization(pres)
    desc = identify(inv, pres)
    part = minimal_relation_partition(I)
    return {
        "ideal": str(I),
        "relation_key": rel.key,
        "generator_pairs": [[str(u), str(v)] for u, v in part.generator_pairs()],
        "blocks": [[str(p) for p in b] for b in rel.blocks],
        "presentation": {
            "basepoint": str(pres.basepoint),
            "tree": list(tree.tree_arrows),
            "generators": list(pres.generators),
            "relators": [format_word(r) for r in pres.relators],
        },
        "abelian_invariants": {"rank": inv.rank, "torsion": list(inv.torsion)},
        "group": desc.text,
        "certified": desc.certified,
    }


def cmd_pi1(doc: InputDocument, name: str, basepoint=None):
    I = _ideal(doc, name)
    if basepoint is not None:
        basepoint = next((v for v in doc.quiver.vertices if str(v) == str(basepoint)), basepoint)
    return _report("pi1", name=name, field=str(doc.field), **_pi1_fields(doc, I, basepoint)), EXIT_OK


def _parse_taus(doc, text):
    if text is None:
        return None
    return [doc.field(t) for t in text.split(",") if t.strip()]


def cmd_gamma(doc: InputDocument, name: str, tau_set=None, depth=None, cap=gm.DEFAULT_CAP):
    I = _ideal(doc, name)
    g = gm.explore(I, tau_set=_parse_taus(doc, tau_set), depth=depth, cap=cap)
    props = gm.verify_properties(g)
    thm = gm.theorem_report(g)
    vertices = []
    for key, v in g.vertices.items():
        vertices.append({
            "key": key,
            "group": v.descriptor.text,
            "abelian_invariants": {"rank": v.invariants.rank, "torsion": list(v.invariants.torsion)},
            "relators": [format_word(r) for r in v.presentation.relators],
            "representative": str(v.ideals[0]) if v.ideals else None,
            "blocks": [[str(p) for p in b] for b in v.relation.blocks],
        })
    edges = [
        {"source": e.source, "target": e.target, "witness": e.label,
         "bypass": [e.bypass.arrow, str(e.bypass.detour)], "tau": str(e.tau), "duplicates": e.duplicates}
        for e in g.edges.values()
    ]
    rep = _report(
        "gamma",
        name=name,
        field=str(doc.field),
        m=g.bypass_count,
        tau_set=[str(t) for t in g.tau_set],
        exhausted=g.exhausted,
        vertices=vertices,
        edges=edges,
        sources=thm["sources"],
        unique_source=thm["unique_source"],
        source_groups=thm["source_groups"],
        chains=thm["chains"],
        properties=props,
        warnings=thm["warnings"],
        inconclusive=[list(t) for t in g.inconclusive],
        violations=list(g.violations),
    )
    if g.inconclusive:
        code = EXIT_INCONCLUSIVE
    elif len(thm["sources"]) > 1:
        code = EXIT_MULTIPLE
    else:
        code = EXIT_OK
    return rep, code, g


def cmd_compare(doc: InputDocument, a: str, b: str, tau_set=None, depth=2):
    I, J = _ideal(doc, a), _ideal(doc, b)
    cmp = compare(compute_relation(I), compute_relation(J))
    phi, reason = gm.find_automorphism(I, J, _parse_taus(doc, tau_set), depth)
    rep = _report(
        "compare",
        first=a,
        second=b,
        field=str(doc.field),
        relation=cmp.value,
        ideals_equal=I == J,
        witness=str(phi) if phi is not None else None,
        witness_reason=reason,
    )
    return rep, EXIT_OK


# -- rendering -----------------------------------------------------------

def _count(n: int, one: str, many: str) -> str:
    return f"{n} {one if n == 1 else many}"


def render_text(rep: dict) -> str:
    cmd = rep["command"]
    out = []
    if cmd == "validate":
        out.append(f"acyclic: {'yes' if rep['acyclic'] else 'NO'}")
        if rep.get("error"):
            out.append(f"error: {rep['error']}")
        out.append(f"connected: {'yes' if rep['connected'] else 'NO'}")
        if "m" in rep:
            out.append(f"bypasses (m = {rep['m']}): " + ", ".join(f"({a}, {u})" for a, u in rep["bypasses"]))
            out.append("double bypasses: " + (", ".join(rep["double_bypasses"]) or "none"))
            for name, info in rep["ideals"].items():
                status = f"admissible, dim {info['dimension']}" if info["admissible"] else info["error"]
                out.append(f"ideal {name}: {status}")
    elif cmd == "pi1":
        out.append(f"ideal {rep['name']} = {rep['ideal']} over {rep['field']}")
        out.append("homotopy generators: " + (", ".join(f"{u} ~ {v}" for u, v in rep["generator_pairs"]) or "none"))
        p = rep["presentation"]
        out.append(f"presentation: < {', '.join(p['generators'])} | {', '.join(p['relators'])} >")
        inv = rep["abelian_invariants"]
        out.append(f"abelianization: rank {inv['rank']}, torsion {inv['torsion']}")
        out.append(f"group: {rep['group']}")
    elif cmd == "gamma":
        out.append(f"Γ from ideal {rep['name']} over {rep['field']} (m = {rep['m']}):"
                   f" {_count(len(rep['vertices']), 'vertex', 'vertices')}, {_count(len(rep['edges']), 'edge', 'edges')},"
                   f" {'exhausted' if rep['exhausted'] else 'truncated'}")
        for v in rep["vertices"]:
            out.append(f"  vertex {v['key'][:10]}  {v['group']}")
        for e in rep["edges"]:
            out.append(f"  edge {e['source'][:10]} -> {e['target'][:10]}  {e['witness']}")
        out.append("sources: " + ", ".join(f"{s[:10]} ({rep['source_groups'][s]})" for s in rep["sources"]))
        out.append(f"unique source: {'yes' if rep['unique_source'] else 'no'}")
        for c in rep["chains"]:
            out.append(f"  surjections to {c['target'][:10]}: {c['surjections']}")
        props = rep["properties"]
        out.append("properties: " + ", ".join(f"{k}={v}" for k, v in props.items()))
        if rep["inconclusive"]:
            out.append(f"inconclusive verdicts: {len(rep['inconclusive'])}")
    elif cmd == "compare":
        rel = "equal to" if rep["relation"] == "equal" else rep["relation"]
        rel = rel if rel in ("equal to", "incomparable") else rel + " than"
        out.append(f"~{rep['first']} is {rel} ~{rep['second']}")
        out.append(f"ideals equal: {'yes' if rep['ideals_equal'] else 'no'}")
        out.append(f"automorphism: {rep['witness'] or 'none found (' + rep['witness_reason'] + ')'}")
    for w in rep.get("warnings", []):
        out.append(f"warning: {w}")
    if "timing_ms" in rep:
        out.append(f"time: {rep['timing_ms']:.1f} ms")
    return "\n".join(out) + "\n"


def dump_json(rep: dict) -> str:
    return json.dumps(rep, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiver-pi1", description=__doc__.splitlines()[0])
    parser.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help=".quiver input document")
        p.add_argument("--json", nargs="?", const="-", metavar="PATH",
                       help="write the JSON report to PATH (stdout when omitted)")

    p = sub.add_parser("validate", help="check the quiver and ideals")
    common(p)
    p = sub.add_parser("pi1", help="fundamental group of one presentation")
    common(p)
    p.add_argument("ideal")
    p.add_argument("--basepoint")
    p = sub.add_parser("gamma", help="explore the graph of homotopy relations")
    common(p)
    p.add_argument("ideal")
    p.add_argument("--tau-set", help="comma-separated field elements, e.g. '1,-1'")
    p.add_argument("--depth", type=int)
    p.add_argument("--cap", type=int, default=gm.DEFAULT_CAP, help="representative ideals kept per relation")
    p.add_argument("--dot", metavar="PATH", help="write Γ in DOT format")
    p = sub.add_parser("compare", help="compare the homotopy relations of two ideals")
    common(p)
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--tau-set")
    p.add_argument("--depth", type=int, default=2)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        doc = load(args.file)
    except (OSError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    try:
        if args.command == "validate":
            rep, code = cmd_validate(doc)
        elif args.command == "pi1":
            rep, code = cmd_pi1(doc, args.ideal, args.basepoint)
        elif args.command == "gamma":
            rep, code, g = cmd_gamma(doc, args.ideal, args.tau_set, args.depth, args.cap)
            if args.dot:
                with open(args.dot, "w", encoding="utf-8") as fh:
                    fh.write(gm.to_dot(g))
        else:
            rep, code = cmd_compare(doc, args.first, args.second, args.tau_set, args.depth)
    except LookupFailure as e:
        print(f"error: unknown ideal {e.args[0]!r}", file=sys.stderr)
        return EXIT_LOOKUP
    except (QuiverError, AdmissibilityError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    if args.timing:
        rep["timing_ms"] = (time.perf_counter() - start) * 1000
    if args.json == "-":
        sys.stdout.write(dump_json(rep))
    else:
        sys.stdout.write(render_text(rep))
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(dump_json(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
