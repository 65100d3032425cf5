"""Command-line front end.

Five subcommands: validate, invariants, mult, table, splice-eqs.  Output is
fully deterministic; rationals are printed as exact "p/q" strings, never as
floats.  Exit codes: 0 success, 1 input/validation problem, 2 mathematical
precondition failure, 3 resource cap hit.
"""

import argparse
import json
import os
import sys

from .errors import (
    BadWeightError,
    CapExceededError,
    GraphMismatchError,
    MaxBlowupsExceededError,
    MonomialConditionError,
    NonIntegerMultiplicityError,
    NotAnEdgeError,
    NotAnEndError,
    NotATreeError,
    NotMinimalError,
    NotNegativeDefiniteError,
    ParseError,
    SpliceMultError,
    TooSmallError,
    UnknownVertexError,
)
from .graph import is_minimal, parse_and_validate
from .lattice import (
    discriminant_group,
    dual_cycles,
    enumerate_subgroups,
    flat_subgroup,
    full_subgroup,
    subgroup,
    to_dual_coordinates,
    trivial_subgroup,
)
from .monomial import base_point_set, monomial_condition, neumann_wahl_system
from .pipeline import PipelineConfig, run_pipeline

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONDITION = 2
EXIT_CAP = 3

_INPUT_ERRORS = (ParseError, NotATreeError, NotNegativeDefiniteError,
                 BadWeightError, TooSmallError, UnknownVertexError,
                 NotAnEdgeError, NotAnEndError, GraphMismatchError,
                 OSError)
_CAP_ERRORS = (CapExceededError, MaxBlowupsExceededError)


def _emit_json(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _load_graph(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_and_validate(fh.read())


def _load_subgroup(path, graph, group, cap):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or "generators" not in obj:
        raise ParseError("subgroup document needs a 'generators' field")
    gens = obj["generators"]
    if not isinstance(gens, list):
        raise ParseError("'generators' must be a list of integer vectors")
    n = len(graph)
    for vec in gens:
        if (not isinstance(vec, list) or len(vec) != n
                or not all(type(x) is int for x in vec)):
            raise ParseError(
                f"each generator must be a list of {n} integers "
                "(sorted-vertex-id order)")
    return subgroup(gens, group, cap)


def _fmt_dual_combo(graph, coords):
    """Render a dual-coordinate vector as a combination of E_v*."""
    terms = []
    for v, c in zip(graph.vertex_ids, coords):
        if c == 0:
            continue
        if c == 1:
            terms.append(f"E{v}*")
        else:
            terms.append(f"{c}*E{v}*")
    return " + ".join(terms) if terms else "0"


def _fmt_nf(nf):
    return "(" + ",".join(str(x) for x in nf) + ")"


def _fmt_subgroup(sub):
    gens = sub.minimal_generators()
    if not gens:
        return "{0}"
    return "<" + ", ".join(_fmt_nf(nf) for nf in gens) + ">"


# --- subcommands ---------------------------------------------------------------


def cmd_validate(args):
    g = _load_graph(args.graph)
    if not is_minimal(g):
        print("graph is valid but not minimal: it has a blow-downable "
              "(-1)-vertex", file=sys.stderr)
        return EXIT_INPUT
    report = monomial_condition(g, dual_cycles(g))
    if not report.satisfied:
        print("monomial condition FAILS:")
        for entry in report.failures():
            print(f"  node {entry.node}, branch {list(entry.branch)}: "
                  "no admissible monomial")
        return EXIT_CONDITION
    print(f"ok: {len(g)} vertices, ends {list(g.ends)}, "
          f"nodes {list(g.nodes)}, monomial condition holds")
    return EXIT_OK


def cmd_invariants(args):
    g = _load_graph(args.graph)
    basis = dual_cycles(g)
    group = discriminant_group(g, basis)
    base = base_point_set(g, basis)
    if args.json:
        _emit_json({
            "vertices": list(g.vertex_ids),
            "ends": list(g.ends),
            "nodes": list(g.nodes),
            "det": _det(g),
            "order": group.order,
            "invariant_factors": list(group.invariant_factors),
            "dual_matrix": [[str(x) for x in row] for row in basis.matrix],
            "base_points": sorted(base),
        })
        return EXIT_OK
    print(f"vertices: {len(g)}  ends: {list(g.ends)}  nodes: {list(g.nodes)}")
    print(f"det I(E) = {_det(g)}")
    factors = " x ".join(f"Z/{d}" for d in group.invariant_factors) or "trivial"
    print(f"|H| = {group.order}  ({factors})")
    print("dual cycles (rows E_v* in vertex order "
          f"{list(g.vertex_ids)}):")
    for v in g.vertex_ids:
        row = " ".join(str(basis.entry(w, v)) for w in g.vertex_ids)
        print(f"  E{v}* = ({row})")
    print(f"base points: {sorted(base)}")
    return EXIT_OK


def _det(g):
    from .linalg import determinant

    return determinant(g.intersection_matrix())


def _config_from_args(args):
    raw = os.environ.get("SPLICEMULT_MAX_BOX", "")
    try:
        max_box = int(raw) if raw else 10 ** 8
    except ValueError:
        raise ParseError(
            f"SPLICEMULT_MAX_BOX must be an integer, got {raw!r}") from None
    kwargs = {"max_box": max_box}
    if getattr(args, "mode", None):
        kwargs["mode"] = args.mode
    if getattr(args, "max_blowups", None):
        kwargs["max_blowups"] = args.max_blowups
    if getattr(args, "allow_non_minimal", False):
        kwargs["allow_non_minimal"] = True
    return PipelineConfig(**kwargs)


def cmd_mult(args):
    g = _load_graph(args.graph)
    config = _config_from_args(args)
    report = monomial_condition(g, dual_cycles(g), config.search_cap)
    if not report.satisfied:
        bad = ", ".join(f"node {e.node} branch {list(e.branch)}"
                        for e in report.failures())
        raise MonomialConditionError(f"monomial condition fails at: {bad}")
    group = discriminant_group(g)
    if args.uac:
        h1 = trivial_subgroup(group, config.group_cap)
    elif args.quotient:
        h1 = full_subgroup(group, config.group_cap)
    else:
        h1 = _load_subgroup(args.subgroup, g, group, config.group_cap)
    result = run_pipeline(g, h1, config)
    if args.json:
        _emit_json(result.to_dict())
        return EXIT_OK
    print(f"|H| = {result.order}  |H1| = {result.h1_order}  "
          f"index |H/H1| = {result.index}")
    if args.trace:
        for k, rnd in enumerate(result.rounds, start=1):
            print(f"round {k}: {len(rnd.generators)} generators, "
                  f"Z = {_fmt_dual_combo(rnd.graph, rnd.z_dual)}")
            for dec in rnd.end_decisions:
                extra = (f" (generator {dec.witness})"
                         if dec.witness is not None else "")
                print(f"  end {dec.end}: {dec.action}{extra}")
            for chk in rnd.edge_checks:
                state = "pass" if chk.passed else "FAIL"
                note = " [Z.E=0]" if chk.pruned_by_zero else ""
                print(f"  edge {chk.edge}: {state}{note}")
            if rnd.blowup is not None:
                ev = rnd.blowup
                print(f"  blowup {ev.kind} at {list(ev.center)} -> "
                      f"new vertex {ev.new_vertex}")
    print(f"Z = {_fmt_dual_combo(result.z_final.graph, to_dual_coordinates(result.z_final))}")
    print(f"Z.Z = {result.zz}")
    print(f"multiplicity = {result.multiplicity}")
    return EXIT_OK


def cmd_table(args):
    g = _load_graph(args.graph)
    config = _config_from_args(args)
    basis = dual_cycles(g)
    report = monomial_condition(g, basis, config.search_cap)
    if not report.satisfied:
        raise MonomialConditionError("monomial condition fails")
    group = discriminant_group(g, basis)
    rows = []
    for h1 in enumerate_subgroups(group, config.group_cap):
        result = run_pipeline(g, h1, config)
        flat = flat_subgroup(h1, config.group_cap)
        rows.append({
            "subgroup": _fmt_subgroup(h1),
            "elements": [list(nf) for nf in h1.canonical_elements],
            "flat": _fmt_subgroup(flat),
            "flat_elements": [list(nf) for nf in flat.canonical_elements],
            "order": h1.order,
            "index": h1.index,
            "Z_dual": {str(v): str(c) for v, c in
                       zip(result.z_final.graph.vertex_ids,
                           to_dual_coordinates(result.z_final))},
            "Z": _fmt_dual_combo(result.z_final.graph,
                                 to_dual_coordinates(result.z_final)),
            "ZZ": str(result.zz),
            "multiplicity": result.multiplicity,
        })
    if args.json:
        _emit_json({
            "order": group.order,
            "invariant_factors": list(group.invariant_factors),
            "rows": rows,
        })
        return EXIT_OK
    print(f"|H| = {group.order}, {len(rows)} subgroups "
          f"(elements written in Z/" +
          " x Z/".join(str(d) for d in group.invariant_factors) +
          " normal form)")
    header = f"{'H1':<24} {'H1_flat':<24} {'|H1|':>4}  {'Z':<28} mult"
    print(header)
    for row in rows:
        print(f"{row['subgroup']:<24} {row['flat']:<24} {row['order']:>4}  "
              f"{row['Z']:<28} {row['multiplicity']}")
    return EXIT_OK


def cmd_splice_eqs(args):
    g = _load_graph(args.graph)
    systems = neumann_wahl_system(g, dual_cycles(g))
    for system in systems:
        print(f"node {system.node} ({len(system.branches)} branches):")
        for k, eq in enumerate(system.equations(), start=1):
            print(f"  f{k} = {eq}")
    return EXIT_OK


# --- driver ---------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="splicemult",
        description="Exact multiplicities of abelian covers of splice "
                    "quotient singularities from resolution graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check graph and monomial condition")
    p.add_argument("graph")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("invariants",
                       help="dual cycles, discriminant group, base points")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("mult", help="multiplicity of one abelian cover")
    p.add_argument("graph")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--subgroup", help="JSON file with H1 generators")
    src.add_argument("--uac", action="store_true",
                     help="universal abelian cover (H1 = 0)")
    src.add_argument("--quotient", action="store_true",
                     help="the singularity itself (H1 = H)")
    p.add_argument("--mode", choices=["strict", "optimized"],
                   default="optimized")
    p.add_argument("--trace", action="store_true",
                   help="print every round of the blowup loop")
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-blowups", type=int, default=None)
    p.add_argument("--allow-non-minimal", action="store_true")
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("table", help="multiplicities for every subgroup of H")
    p.add_argument("graph")
    p.add_argument("--mode", choices=["strict", "optimized"],
                   default="optimized")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("splice-eqs",
                       help="Neumann-Wahl splice equation skeletons")
    p.add_argument("graph")
    p.set_defaults(func=cmd_splice_eqs)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CAP_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (MonomialConditionError, NonIntegerMultiplicityError,
            NotMinimalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONDITION
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SpliceMultError, ValueError) as exc:  # anything else unexpected
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
