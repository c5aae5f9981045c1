"""Command-line entry point.

Verbs: expand, btable, sinks, stk, criteria, tabloid, scan, fixtures.
Trees are given as edge-list files, constructor strings (path:8,
star:4, spider:6,4,1,1, caterpillar:1,1,2,1,2, fixture:T4), or canonical
level-sequence strings as printed by the library (code:0,1,2,...).
Partitions accept bracketed lists like [4,2] and exponent shorthand like
(3,2^7).  `--json` switches every verb to machine-readable output.

Exit codes: 0 success, 2 counterexample found (conjecture scan), 3 resume
refused, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Optional

from .criteria import CRITERION_NAMES, run_all
from .csf import (
    b_table,
    coefficient_stk,
    e_expansion,
    p_expansion,
    reduced_stk_sum,
    sink_counts,
)
from .fixtures import FIXTURE_NAMES, fixture_tree
from .partition import format_partition, parse_partition
from .scan import MODES, ScanConfig, ScanResumeError, resume, run_scan
from .sympoly import SymPoly
from .tabloid import ordered_count, weight_sum
from .tree import (
    Tree,
    from_edges,
    make_caterpillar,
    make_path,
    make_spider,
    make_star,
    tree_from_code,
)

USAGE_ERROR = 64
COUNTEREXAMPLE_FOUND = 2
RESUME_REFUSED = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def tree_from_edge_file(path: str) -> Tree:
    """Read a tree from a file of "u v" lines (0-indexed; # starts a comment)."""
    edges = []
    top = -1
    with open(path) as f:
        for line in f:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"bad edge line {line!r} in {path}")
            u, v = int(parts[0]), int(parts[1])
            edges.append((u, v))
            top = max(top, u, v)
    return from_edges(top + 1, edges)


def parse_tree_spec(spec: str) -> Tree:
    """Turn a CLI tree spec into a Tree."""
    if ":" in spec:
        kind, _, rest = spec.partition(":")
        kind = kind.strip().lower()
        if kind == "path":
            return make_path(int(rest))
        if kind == "star":
            return make_star(int(rest))
        if kind == "spider":
            return make_spider([int(x) for x in rest.split(",")])
        if kind == "caterpillar":
            return make_caterpillar([int(x) for x in rest.split(",")])
        if kind == "fixture":
            return fixture_tree(rest.strip())
        if kind == "code":
            return tree_from_code(rest)
        if kind == "file":
            return tree_from_edge_file(rest)
        raise ValueError(f"unknown tree spec kind {kind!r}")
    if os.path.exists(spec):
        return tree_from_edge_file(spec)
    if re.fullmatch(r"[0-9][0-9,]*", spec):
        return tree_from_code(spec)
    raise ValueError(
        f"cannot interpret tree spec {spec!r}: not a file, constructor, or level sequence"
    )


def _parse_n_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        return int(lo), int(hi)
    n = int(text)
    return n, n


def _cmd_expand(args) -> int:
    t = parse_tree_spec(args.tree)
    if args.basis == "p":
        poly = p_expansion(t)
    else:
        report = e_expansion(t)
        poly = SymPoly("e", t.n, report.coefficients)
    if args.json:
        print(json.dumps(poly.to_json_dict(), indent=2))
    else:
        print(poly.render())
    return 0


def _cmd_btable(args) -> int:
    t = parse_tree_spec(args.tree)
    bt = b_table(t)
    if args.json:
        payload = {
            "n": bt.n,
            "counts": [
                {"partition": list(lam), "count": c} for lam, c in bt.items_dec_lex()
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        for lam, c in bt.items_dec_lex():
            print(f"b{format_partition(lam)} = {c}")
    return 0


def _cmd_sinks(args) -> int:
    t = parse_tree_spec(args.tree)
    table = sink_counts(t)
    if args.json:
        print(json.dumps({"n": table.n, "sinks": {str(j): c for j, c in sorted(table.sinks.items())}}, indent=2))
    else:
        for j, c in sorted(table.sinks.items()):
            print(f"j={j}: {c}")
    return 0


def _cmd_stk(args) -> int:
    t = parse_tree_spec(args.tree)
    if args.reduced:
        value = reduced_stk_sum(t, args.s, args.t, args.k)
    else:
        value = coefficient_stk(t, args.s, args.t, args.k)
    if args.json:
        print(json.dumps({"s": args.s, "t": args.t, "k": args.k, "reduced": args.reduced, "value": value}))
    else:
        print(value)
    return 0


def _cmd_criteria(args) -> int:
    t = parse_tree_spec(args.tree)
    only = [x.strip() for x in args.only.split(",")] if args.only else None
    verdict = run_all(t, short_circuit=False, only=only)
    if args.json:
        print(json.dumps(verdict.to_json_list(), indent=2))
    else:
        for entry in verdict:
            if not entry.applicable:
                status = "n/a"
            elif entry.violated:
                status = "VIOLATED"
            else:
                status = "ok"
            detail = f"  {entry.witness}" if entry.witness else ""
            print(f"{entry.name}: {status}{detail}")
    return 0


def _cmd_tabloid(args) -> int:
    content = parse_partition(args.content)
    shape = parse_partition(args.shape)
    if args.stat == "w":
        value = weight_sum(content, shape)
    else:
        value = ordered_count(content, shape)
    if args.json:
        print(json.dumps({"stat": args.stat, "content": list(content), "shape": list(shape), "value": value}))
    else:
        print(value)
    return 0


def _cmd_fixtures(args) -> int:
    if args.json:
        payload = {
            name: {"n": fixture_tree(name).n, "edges": [list(e) for e in fixture_tree(name).edges()]}
            for name in FIXTURE_NAMES
        }
        print(json.dumps(payload, indent=2))
    else:
        for name in FIXTURE_NAMES:
            t = fixture_tree(name)
            print(f"# {name} (n={t.n})")
            for u, v in t.edges():
                print(f"{u} {v}")
            print()
    return 0


def _cmd_scan(args) -> int:
    n_min, n_max = _parse_n_range(args.n)
    config = ScanConfig(
        n_min=n_min,
        n_max=n_max,
        min_delta=args.min_delta,
        max_delta=args.max_delta,
        include_spiders=args.include_spiders,
        mode=args.mode,
        workers=args.jobs if args.jobs is not None else args.threads,
        output_path=args.out,
        checkpoint_path=args.checkpoint,
        record_timing=args.timing,
    )
    try:
        summary = resume(config) if args.resume else run_scan(config)
    except ScanResumeError as exc:
        print(f"resume refused: {exc}", file=sys.stderr)
        return RESUME_REFUSED
    if args.json:
        print(json.dumps(summary, indent=2, sort_keys=True))
    elif not args.quiet:
        total_cpet = sum(len(v) for v in summary["cpet_trees"].values())
        print(f"records: {summary['records_total']}  cpet trees: {total_cpet}")
        for n, codes in sorted(summary["cpet_trees"].items()):
            for code in codes:
                print(f"cpet n={n}: {code}")
        for item in summary["e_positive_trees"]:
            print(f"E-POSITIVE (counterexample) n={item['n']}: {item['canonical_code']}")
        print(f"summary written to {config.output_path}.summary.json")
    if config.mode == "verify_conjecture" and summary["e_positive_trees"]:
        return COUNTEREXAMPLE_FOUND
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="treecsf", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--quiet", action="store_true", help="suppress chatty output")
    parser.add_argument("--threads", type=int, default=1, help="default worker count for scan")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("expand", help="expand the chromatic symmetric function of a tree")
    p.add_argument("--tree", required=True)
    p.add_argument("--basis", choices=("e", "p"), default="e")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("btable", help="connected-partition counts of a tree")
    p.add_argument("--tree", required=True)
    p.set_defaults(func=_cmd_btable)

    p = sub.add_parser("sinks", help="acyclic orientation counts by number of sinks")
    p.add_argument("--tree", required=True)
    p.set_defaults(func=_cmd_sinks)

    p = sub.add_parser("stk", help="the (s,t^k) e-coefficient or its reduced sum")
    p.add_argument("--tree", required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--reduced", action="store_true", help="the reduced alternating sum instead")
    p.set_defaults(func=_cmd_stk)

    p = sub.add_parser("criteria", help="necessary-condition battery for e-positivity")
    p.add_argument("--tree", required=True)
    p.add_argument("--only", help=f"comma-separated subset of {','.join(CRITERION_NAMES)}")
    p.set_defaults(func=_cmd_criteria)

    p = sub.add_parser("tabloid", help="brick tabloid statistics")
    p.add_argument("stat", choices=("w", "ob"))
    p.add_argument("content")
    p.add_argument("shape")
    p.set_defaults(func=_cmd_tabloid)

    p = sub.add_parser("scan", help="exhaustive scan over isomorphism classes of trees")
    p.add_argument("--n", required=True, help="vertex count or range, e.g. 17 or 17..19")
    p.add_argument("--min-delta", type=int, default=4)
    p.add_argument("--max-delta", type=int, default=None)
    p.add_argument("--mode", choices=MODES, default="verify_conjecture")
    p.add_argument("--jobs", type=int, default=None, help="worker processes")
    p.add_argument("--out", required=True, help="record output path (JSON lines)")
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--include-spiders", action="store_true")
    p.add_argument("--resume", action="store_true", help="continue from the checkpoint")
    p.add_argument("--timing", action="store_true", help="record per-tree wall time")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("fixtures", help="print the built-in reference trees T1-T4")
    p.set_defaults(func=_cmd_fixtures)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
