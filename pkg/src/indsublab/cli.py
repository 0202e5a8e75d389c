"""Command-line front end.

Subcommands: ae, ae-mod, subbasis, fixed-points, count, reduce, lift, gadget,
verify.  Output is deterministic JSON (counts and rationals as decimal
strings); exit codes: 0 success, 2 precondition violation, 3 internal
invariant failure, 64 unknown subcommand, 65 malformed input file.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import InvariantError, PreconditionError

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_INVARIANT = 3
EXIT_USAGE = 64
EXIT_BAD_INPUT = 65

SUBCOMMANDS = (
    "ae",
    "ae-mod",
    "subbasis",
    "fixed-points",
    "count",
    "reduce",
    "lift",
    "gadget",
    "verify",
)


def _emit(obj, out_path: str | None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _frac(x) -> str:
    return str(Fraction(x))


def _load_graph(path: str):
    from .graphs import load_graph

    return load_graph(path)


def _load_coloring(path: str):
    from .graphs import HColoring, graph_from_json

    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    try:
        host = graph_from_json(obj["host"])
        pattern = graph_from_json(obj["pattern"])
        cmap = [int(x) for x in obj["map"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed coloring file: {exc}") from exc
    return HColoring(host, pattern, cmap)


def _graph_key(G) -> str:
    from .graphs import canonical_form, to_graph6

    if G.n <= 8:
        return to_graph6(canonical_form(G).graph)
    return to_graph6(G)


def cmd_ae(args) -> dict:
    from .enumerator import alternating_enumerator
    from .params import builtin_parameter

    phi = builtin_parameter(args.phi)
    G = _load_graph(args.graph)
    value = alternating_enumerator(phi, G)
    return {"graph": _graph_key(G), "phi": phi.name, "value": _frac(value)}


def cmd_ae_mod(args) -> dict:
    from .enumerator import alternating_enumerator_mod_p
    from .graphs import complete_graph
    from .params import builtin_parameter
    from .sylow import orbit_partition, sylow_generators

    phi = builtin_parameter(args.phi)
    host = complete_graph(args.p ** args.m)
    lattice = orbit_partition(sylow_generators(args.p, args.m), host)
    residue = alternating_enumerator_mod_p(phi, host, lattice, args.p)
    return {
        "graph": _graph_key(host),
        "phi": phi.name,
        "p": args.p,
        "m": args.m,
        "residue": residue,
    }


def cmd_subbasis(args) -> dict:
    from .enumerator import subbasis_coefficients
    from .graphs import Graph, to_graph6
    from .params import builtin_parameter

    phi = builtin_parameter(args.phi)
    dec = subbasis_coefficients(phi, args.k)
    rows = [
        {"graph": to_graph6(Graph(key[0], key[1])), "value": _frac(coeff)}
        for key, coeff in dec.items()
    ]
    return {"phi": phi.name, "k": args.k, "coefficients": rows}


def cmd_fixed_points(args) -> dict:
    from .graphs import complete_graph, to_graph6
    from .sylow import orbit_partition, sylow_generators, sylow_lattice

    p, m = args.p, args.m
    lattice = orbit_partition(sylow_generators(p, m), complete_graph(p ** m))
    points = []
    for pt in sylow_lattice(p, m):
        g = pt.graph()
        points.append(
            {
                "sets": [sorted(s) for s in pt.sets],
                "graph": to_graph6(g),
                "edges": [list(e) for e in g.edges()],
                "level": pt.level,
                "empty_prefix": pt.empty_prefix,
            }
        )
    return {
        "p": p,
        "m": m,
        "group_order": lattice.group.order,
        "orbits": [[list(e) for e in orbit] for orbit in lattice.orbits],
        "fixed_points": points,
    }


def cmd_count(args) -> dict:
    from .counting import (
        count_cliques,
        count_cp_indsub,
        count_cphom,
        count_hom,
        count_indsub,
        count_sub,
    )
    from .params import builtin_parameter

    mode = args.mode
    if mode == "indsub":
        phi = builtin_parameter(args.phi)
        value = count_indsub(phi, args.k, _load_graph(args.graph))
        return {"mode": mode, "count": _frac(value)}
    if mode == "cpindsub":
        phi = builtin_parameter(args.phi)
        value = count_cp_indsub(phi, _load_coloring(args.coloring))
        return {"mode": mode, "count": _frac(value)}
    if mode == "sub":
        value = count_sub(_load_graph(args.pattern), _load_graph(args.graph))
        return {"mode": mode, "count": str(value)}
    if mode == "hom":
        value = count_hom(_load_graph(args.pattern), _load_graph(args.graph))
        return {"mode": mode, "count": str(value)}
    if mode == "cphom":
        value = count_cphom(_load_coloring(args.coloring))
        return {"mode": mode, "count": str(value)}
    if mode == "clique":
        value = count_cliques(_load_graph(args.graph), args.k)
        return {"mode": mode, "count": str(value)}
    raise PreconditionError(f"unknown count mode {mode!r}")


def cmd_reduce(args) -> dict:
    from .graphs import complete_bipartite
    from .params import builtin_parameter
    from .reductions import count_cliques_via_indsub

    phi = builtin_parameter(args.phi)
    G = _load_graph(args.graph)
    F = _load_graph(args.pattern) if args.pattern else complete_bipartite(args.l, args.l)
    res = count_cliques_via_indsub(args.l, F.n, phi, F, G)
    return {
        "cliques": str(res.count),
        "oracle_calls": res.oracle.call_count,
        "max_query_size": res.oracle.max_query_size,
    }


def cmd_lift(args) -> dict:
    from .params import builtin_parameter
    from .reductions import LiftSpec, lift_parameter

    phi = builtin_parameter(args.phi)
    C = _load_graph(args.c_graph)
    parts = tuple(_load_graph(p) for p in args.parts.split(",")) if args.parts else ()
    spec = LiftSpec(C, parts)
    lifted = lift_parameter(phi, spec)
    G = _load_graph(args.graph)
    return {"phi": lifted.name, "value": _frac(lifted(G))}


def cmd_gadget(args) -> dict:
    from .graphs import graph_to_json
    from .modular import (
        coloring_to_clique_graph,
        count_valid_proper_colorings,
        parse_dimacs,
        sat_to_coloring_graph,
    )

    if args.kind != "sat3":
        raise PreconditionError(f"unknown gadget kind {args.kind!r}")
    with open(args.cnf, "r", encoding="utf-8") as fh:
        cnf = parse_dimacs(fh.read())
    gadget = sat_to_coloring_graph(cnf)
    clique_graph = coloring_to_clique_graph(gadget, cnf, args.k)
    return {
        "variables": cnf.n,
        "clauses": cnf.m,
        "coloring_graph": graph_to_json(gadget.graph),
        "census": {
            "anchors": 3,
            "literal_vertices": 2 * cnf.n,
            "clause_vertices": 6 * cnf.m,
            "total": gadget.graph.n,
        },
        "valid_proper_colorings": count_valid_proper_colorings(gadget),
        "clique_graph": graph_to_json(clique_graph),
        "clique_size": 2 * args.k + 1,
    }


def cmd_verify(args) -> dict:
    from .suites import run_suite

    report = run_suite(args.suite, args.seed)
    return report


def _build_parser(cmd: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=f"indsublab {cmd}")
    if cmd == "ae":
        p.add_argument("--phi", required=True)
        p.add_argument("--graph", required=True)
    elif cmd == "ae-mod":
        p.add_argument("--phi", required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--m", type=int, default=1)
    elif cmd == "subbasis":
        p.add_argument("--phi", required=True)
        p.add_argument("--k", type=int, required=True)
    elif cmd == "fixed-points":
        p.add_argument("p", type=int)
        p.add_argument("m", type=int)
    elif cmd == "count":
        p.add_argument("mode", choices=["indsub", "cpindsub", "sub", "hom", "cphom", "clique"])
        p.add_argument("--phi")
        p.add_argument("--graph")
        p.add_argument("--pattern")
        p.add_argument("--coloring")
        p.add_argument("--k", type=int)
    elif cmd == "reduce":
        p.add_argument("what", choices=["clique-via-indsub"])
        p.add_argument("--l", type=int, required=True)
        p.add_argument("--phi", required=True)
        p.add_argument("--graph", required=True)
        p.add_argument("--pattern")
    elif cmd == "lift":
        p.add_argument("--phi", required=True)
        p.add_argument("--c-graph", required=True, dest="c_graph")
        p.add_argument("--parts", default="")
        p.add_argument("--graph", required=True)
    elif cmd == "gadget":
        p.add_argument("kind", choices=["sat3"])
        p.add_argument("--cnf", required=True)
        p.add_argument("--k", type=int, required=True)
    elif cmd == "verify":
        p.add_argument("suite")
        p.add_argument("--seed", type=int, default=7)
    p.add_argument("--out", default=None)
    return p


_HANDLERS = {
    "ae": cmd_ae,
    "ae-mod": cmd_ae_mod,
    "subbasis": cmd_subbasis,
    "fixed-points": cmd_fixed_points,
    "count": cmd_count,
    "reduce": cmd_reduce,
    "lift": cmd_lift,
    "gadget": cmd_gadget,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] in ("-h", "--help"):
        sys.stdout.write(
            "usage: indsublab {" + ",".join(SUBCOMMANDS) + "} [options]\n"
        )
        return EXIT_OK if argv else EXIT_USAGE
    cmd, rest = argv[0], argv[1:]
    if cmd not in SUBCOMMANDS:
        sys.stderr.write(f"unknown subcommand: {cmd}\n")
        return EXIT_USAGE
    parser = _build_parser(cmd)
    args = parser.parse_args(rest)
    try:
        report = _HANDLERS[cmd](args)
    except PreconditionError as exc:
        sys.stderr.write(f"precondition violation: {exc}\n")
        return EXIT_PRECONDITION
    except InvariantError as exc:
        sys.stderr.write(f"internal invariant failure: {exc}\n")
        return EXIT_INVARIANT
    except (OSError, json.JSONDecodeError, UnicodeDecodeError, ValueError) as exc:
        sys.stderr.write(f"malformed input: {exc}\n")
        return EXIT_BAD_INPUT
    _emit(report, args.out)
    if cmd == "verify" and not report["passed"]:
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
