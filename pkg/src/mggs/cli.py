"""Command-line front end.

Exit status: 0 on success, 1 when a check or golden comparison fails,
2 on usage errors (bad arguments, malformed E, unsupported group).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import oracle
from .autgrp import aut_structure, compute_U, compute_V, compute_W
from . import fpalg
from .catalog import EX3_B1, catalog, compare
from .errors import MggsError, UnsupportedGroupError
from .groups import CONSTANT, MggsGroup, construct, load
from .tree import offsets
from .words import evaluate, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# default depths per check, chosen to finish in seconds
_DEPTHS = {"global-equations": 2, "order-p": 3, "kappa-closure": 3, "centralizer": 2,
           "abelianization": 2, "directed": 3, "normalizers": 3}


class UsageError(Exception):
    pass


def parse_rows(text: str) -> list[list[int]]:
    try:
        return [[int(x) for x in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse E rows {text!r}: use 'r1;r2' with comma-separated integers") from exc


def group_from_args(args) -> MggsGroup:
    if args.file:
        return load(args.file)
    if args.p is None or args.E is None:
        raise UsageError("give the group as -p P -E 'r1;r2;...' or --file group.json")
    return construct(args.p, parse_rows(args.E))


def parse_vertex(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    parts = text.split(",") if "," in text else list(text)
    return tuple(int(x) for x in parts)


def _emit(args, data: dict, text: str) -> None:
    print(json.dumps(data, ensure_ascii=False) if args.json else text)


# subcommands --------------------------------------------------------------------------


def cmd_classify(args) -> int:
    G = group_from_args(args)
    label = G.classification
    if label == CONSTANT:
        label = "constant (excluded from Aut computation)"
    _emit(args, {**G.to_dict(), "classification": G.classification}, label)
    return EXIT_OK


def cmd_uvw(args) -> int:
    G = group_from_args(args)
    U = compute_U(G)
    V, scalars = compute_V(G, U)
    W = compute_W(scalars, G.p)
    data = {"U": sorted(U), "V": sorted(V), "W": sorted(W),
            "scalars": {str(k): v for k, v in sorted(scalars.items())},
            "orders": {"U": len(U), "V": len(V), "W": len(W)}}
    text = "\n".join(f"{k} = {sorted(s)}  (order {len(s)})" for k, s in (("U", U), ("V", V), ("W", W)))
    _emit(args, data, text)
    return EXIT_OK


def cmd_aut(args) -> int:
    G = group_from_args(args)
    report = aut_structure(G)
    _emit(args, report.to_dict(), report.summary())
    return EXIT_OK


def cmd_portrait(args) -> int:
    G = group_from_args(args)
    g = evaluate(parse_word(args.word, G), G, args.depth)
    _emit(args, g.to_dict(), format_portrait(g))
    return EXIT_OK


def cmd_section(args) -> int:
    G = group_from_args(args)
    v = parse_vertex(args.vertex)
    g = evaluate(parse_word(args.word, G), G, args.depth).section(v)
    _emit(args, g.to_dict(), format_portrait(g))
    return EXIT_OK


def format_portrait(g) -> str:
    off = offsets(g.p, g.depth)
    lines = [f"p={g.p} depth={g.depth}"]
    for l in range(g.depth):
        labels = " ".join(f"({int(u)},{int(t)})" for u, t in zip(g.u[off[l]:off[l + 1]], g.t[off[l]:off[l + 1]]))
        lines.append(f"level {l}: {labels}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    name = args.check
    depth = args.depth if args.depth is not None else _DEPTHS.get(name)
    if name == "centralizer":
        result = oracle.check_centralizer_normalizer_A(depth, p=args.p or 3, seed=args.seed)
    else:
        G = group_from_args(args)
        if name == "global-equations":
            result = oracle.check_global_equations(G, depth, mutate=args.mutate, seed=args.seed)
        elif name == "order-p":
            result = oracle.check_order_p_prop(G, args.trials, depth, seed=args.seed)
        elif name == "contraction":
            result = oracle.check_contraction(G, args.trials, seed=args.seed)
        else:
            result = oracle.CHECKS[name](G, depth)
    print(result.to_json() if args.json else f"{result}  seed={args.seed}")
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_examples(args) -> int:
    failures = 0
    for exp in catalog():
        report = aut_structure(exp.group)
        bad = compare(exp, report)
        failures += bool(bad)
        if args.json:
            print(json.dumps({"name": exp.name, "group": exp.group.to_dict(), "report": report.to_dict(),
                              "mismatches": bad}, ensure_ascii=False))
        else:
            print(f"== {exp.name}: {exp.group}  [{'ok' if not bad else 'MISMATCH'}]")
            print("   " + report.summary().replace("\n", "\n   "))
            for b in bad:
                print(f"   mismatch: {b}")
    # the index convention is pinned by b_1 P_5 = -b_1 in example 3
    image = fpalg.perm_apply(EX3_B1, 5, 13)
    holds = image == fpalg.scale(-1, EX3_B1, 13)
    failures += not holds
    if args.json:
        print(json.dumps({"name": "example3_perm_identity", "b1": list(EX3_B1), "b1_P5": list(image), "equals_minus_b1": holds}))
    else:
        print(f"== example3 identity: b1 P_5 = {image} = -b1: {holds}")
    return EXIT_FAIL if failures else EXIT_OK


# parser ---------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-p", type=int, help="odd prime")
    common.add_argument("-E", help="rows of E: 'r1;r2;...' with comma-separated entries")
    common.add_argument("--file", help="group JSON {\"p\": int, \"rows\": [[...]]}")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="mggs", description="Multi-GGS groups and their automorphisms")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="constant / symmetric / regular").set_defaults(func=cmd_classify)
    sub.add_parser("uvw", parents=[common], help="the subgroups U, V, W").set_defaults(func=cmd_uvw)
    sub.add_parser("aut", parents=[common], help="full Aut(G) report").set_defaults(func=cmd_aut)

    sp = sub.add_parser("portrait", parents=[common], help="evaluate a word to a portrait")
    sp.add_argument("-w", "--word", required=True)
    sp.add_argument("-d", "--depth", type=int, required=True)
    sp.set_defaults(func=cmd_portrait)

    sp = sub.add_parser("section", parents=[common], help="section of a word at a vertex")
    sp.add_argument("-w", "--word", required=True)
    sp.add_argument("-v", "--vertex", required=True, help="letters, e.g. '01' or '0,1'; '' for the root")
    sp.add_argument("-d", "--depth", type=int, required=True)
    sp.set_defaults(func=cmd_section)

    sp = sub.add_parser("verify", parents=[common], help="run a brute-force check")
    sp.add_argument("check", choices=sorted(oracle.CHECKS))
    sp.add_argument("-d", "--depth", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--mutate", action="store_true", help="corrupt the coordinate formula (must fail)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("examples", help="recompute the worked examples and compare with golden values")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_examples)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UnsupportedGroupError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, MggsError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
