"""Command-line entry point: ``powergraph {catalog,build,analyze,census,verify}``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .census import (
    CensusConfig,
    analyze,
    analyze_group,
    format_records,
    run_census,
    verify_all,
)
from .graph import dump_edge_list
from .groups import KINDS, GroupError, direct_product, import_cayley_table, parse_descriptor
from .theorems import power_graph_of

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE = 0, 1, 2

KIND_HELP = {
    "cyclic": "cyclic:p^k",
    "abelian": "abelian[l1,l2,...]:p^k, partition of k",
    "elementary": "elementary:p^k",
    "dihedral": "dihedral:2^k, k >= 3",
    "dicyclic": "dicyclic:2^k, k >= 3 (generalized quaternion)",
    "semidihedral": "semidihedral:2^k, k >= 4",
    "modular": "modular:p^k, k >= 3 (k >= 4 for p = 2)",
    "heisenberg": "heisenberg:p^3, p odd",
}


def _kinds(text: str) -> tuple[str, ...]:
    kinds = tuple(k.strip() for k in text.split(",") if k.strip())
    bad = [k for k in kinds if k not in KINDS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown kinds: {', '.join(bad)}")
    return kinds


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="powergraph", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("catalog", help="list catalog p-group kinds")

    b = sub.add_parser("build", help="build a group and print its summary")
    b.add_argument("--spec", required=True)
    b.add_argument("--dump-graph", metavar="PATH")

    a = sub.add_parser("analyze", help="connectivity report for one group")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec")
    src.add_argument("--cayley", metavar="FILE")

    c = sub.add_parser("census", help="analyze every catalog group up to an order")
    c.add_argument("--max-order", type=int, required=True)
    c.add_argument("--kinds", type=_kinds, default=KINDS)
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--out", metavar="PATH")
    c.add_argument("--cache", metavar="PATH")
    c.add_argument("--jobs", type=int, default=1)

    v = sub.add_parser("verify", help="run every check over the census")
    v.add_argument("--max-order", type=int, required=True)
    v.add_argument("--oracle-cap", type=int, default=14)
    v.add_argument("--kinds", type=_kinds, default=KINDS)
    v.add_argument("--jobs", type=int, default=1)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return _run(args)
    except (GroupError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _run(args) -> int:
    if args.command == "catalog":
        for kind in KINDS:
            print(f"{kind:13s} {KIND_HELP[kind]}")
        return EXIT_OK

    if args.command == "build":
        spec = parse_descriptor(args.spec)
        g = direct_product(spec)
        print(json.dumps({"label": g.label, "descriptor": spec.descriptor, "order": g.order, "exponent": g.exponent}))
        if args.dump_graph:
            Path(args.dump_graph).write_text(dump_edge_list(power_graph_of(g)))
        return EXIT_OK

    if args.command == "analyze":
        if args.spec:
            rec = analyze(parse_descriptor(args.spec))
        else:
            path = Path(args.cayley)
            rec = analyze_group(import_cayley_table(path.read_bytes(), label=path.name))
        print(json.dumps(rec))
        return EXIT_DISAGREE if rec.get("agreement") is False else EXIT_OK

    if args.command == "census":
        cfg = CensusConfig(
            max_order=args.max_order,
            kinds=args.kinds,
            output_format=args.format,
            cache_path=args.cache,
            jobs=args.jobs,
        )
        text = format_records(run_census(cfg), cfg.output_format)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK

    cfg = CensusConfig(max_order=args.max_order, kinds=args.kinds, oracle_cap=args.oracle_cap, jobs=args.jobs)
    res = verify_all(cfg)
    summary = res.tally.summary()
    width = max(len(k) for k in summary)
    print(f"verified {res.groups} census groups (max order {cfg.max_order})")
    for name, row in summary.items():
        mark = "ok  " if row["failed"] == 0 else "FAIL"
        print(f"{mark} {name:{width}s} {row['checked']:6d} checked {row['failed']:4d} failed")
    for name, where in sorted(res.tally.failures.items()):
        for w in where:
            print(f"disagreement [{name}]: {w}")
    return res.status


if __name__ == "__main__":
    sys.exit(main())
