"""Command line: ``kleaf solve|maxleaf|oracle|analyze|rules``.

Exit codes: 0 yes / value computed, 1 no, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .io import GraphParseError, load_graph
from .oracle import max_leaf_bruteforce
from .ruletable import table_json
from .search import find_max_leaf, solve
from .vectors import verify_all_rules

EXIT_YES, EXIT_NO, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kleaf", description="Exact k-leaf spanning tree solver.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="decide whether a spanning tree with >= k leaves exists")
    s.add_argument("--input", required=True, help="graph file (DIMACS or edge list) or a named graph")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--witness", action="store_true", help="print a spanning tree with >= k leaves")
    s.add_argument("--verify", action="store_true", help="check measure and bookkeeping claims at every node")
    s.add_argument("--stats", type=Path, help="write search statistics as JSON")
    s.add_argument("--all-roots-parallel", action="store_true", help="search the roots in worker processes")

    m = sub.add_parser("maxleaf", help="maximum number of leaves of a spanning tree")
    m.add_argument("--input", required=True)

    o = sub.add_parser("oracle", help="exhaustive maximum (small graphs only)")
    o.add_argument("--input", required=True)
    o.add_argument("--k", type=int)

    a = sub.add_parser("analyze", help="branching-vector roots per rule and klam values")
    a.add_argument("--out-dir", type=Path, help="write report.csv, report.json and roots.png here")
    a.add_argument("--json", action="store_true", help="print JSON instead of the text table")

    sub.add_parser("rules", help="print the rule table as JSON")
    return p


def _edges_text(g, edges) -> str:
    lab = g.labels
    return "\n".join(f"{lab[u]} {lab[v]}" for u, v in edges)


def _cmd_solve(args) -> int:
    g = load_graph(args.input)
    verdict = solve(g, args.k, witness=args.witness, verify=args.verify, parallel=args.all_roots_parallel)
    print("yes" if verdict.decision else "no")
    if verdict.witness is not None:
        print(f"leaves {verdict.witness_leaf_count}")
        print(_edges_text(g, verdict.witness))
    st = verdict.stats
    if args.verify:
        print(f"verified {st.nodes_visited} nodes, {st.children_checked} children, "
              f"{len(st.violations)} violations", file=sys.stderr)
        for msg in st.violations:
            print(f"  {msg}", file=sys.stderr)
    if args.stats:
        doc = {"decision": "yes" if verdict.decision else "no", "k": args.k, "n": g.n, "m": g.m}
        doc.update(st.as_dict())
        if verdict.witness is not None:
            doc["witness_leaf_count"] = verdict.witness_leaf_count
        args.stats.write_text(json.dumps(doc, indent=2) + "\n")
    return EXIT_YES if verdict.decision else EXIT_NO


def _cmd_maxleaf(args) -> int:
    g = load_graph(args.input)
    if g.n == 0 or not g.is_connected():
        print("no spanning tree")
        return EXIT_NO
    print(find_max_leaf(g))
    return EXIT_YES


def _cmd_oracle(args) -> int:
    g = load_graph(args.input)
    res = max_leaf_bruteforce(g)
    print(res.max_leaves)
    print(_edges_text(g, res.witness_tree))
    if args.k is not None:
        return EXIT_YES if res.max_leaves >= args.k else EXIT_NO
    return EXIT_YES


def _cmd_analyze(args) -> int:
    report = verify_all_rules()
    if args.out_dir:
        from .plotting import plot_roots

        args.out_dir.mkdir(parents=True, exist_ok=True)
        with open(args.out_dir / "report.csv", "w", newline="") as fh:
            csv.writer(fh).writerows(report.to_csv_rows())
        (args.out_dir / "report.json").write_text(report.to_json() + "\n")
        plot_roots(report, args.out_dir / "roots.png")
        print(f"wrote report.csv, report.json, roots.png to {args.out_dir}", file=sys.stderr)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_YES if report.passed else EXIT_NO


def _cmd_rules(args) -> int:
    print(table_json())
    return EXIT_YES


COMMANDS = {
    "solve": _cmd_solve,
    "maxleaf": _cmd_maxleaf,
    "oracle": _cmd_oracle,
    "analyze": _cmd_analyze,
    "rules": _cmd_rules,
}


def run_cli(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (GraphParseError, FileNotFoundError, ValueError) as exc:
        print(f"kleaf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
