"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (a witness is printed), 2 usage or
parse failure.  Diagnostics go to standard error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ktreepart.chordal import RecognitionFailure, recognize_ktree
from ktreepart.documents import (
    DocumentError,
    GraphDocument,
    PartitionDocument,
    build_order_to_json,
    dumps,
    loads,
    to_dot,
)
from ktreepart.harness import (
    DEFAULT_ORACLE_CAP,
    DEFAULT_TIGHTNESS_CAP,
    GenSpec,
    certify_tightness,
    oracle_exists_partition,
    random_ktree,
)
from ktreepart.oriented import (
    orient_from_buildorder,
    recognize_oriented_ktree,
    theorem2_partition,
    validate_oriented_partition,
)
from ktreepart.partition import theorem1_partition, validate_theorem1

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"ktreepart: {msg}", file=sys.stderr)


def _read(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return loads(text)
    except DocumentError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _read_graph(path: str, oriented: bool) -> GraphDocument:
    doc = _read(path)
    if not isinstance(doc, GraphDocument):
        raise UsageError(f"{path}: expected a graph document")
    if doc.directed != oriented:
        want = "directed" if oriented else "undirected"
        raise UsageError(f"{path}: expected a {want} graph (check --oriented)")
    return doc


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _check_kl(k: int, l: int) -> None:
    if k < 0 or not 0 <= l <= k:
        raise UsageError(f"need 0 <= l <= k, got k={k}, l={l}")


def _failure_json(f: RecognitionFailure) -> str:
    return json.dumps({"kind": f.kind, "vertices": list(f.vertices), "detail": f.detail}) + "\n"


def cmd_recognize(args) -> int:
    if args.k < 0:
        raise UsageError("k must be non-negative")
    g = _read_graph(args.input, args.oriented).to_graph()
    found = recognize_oriented_ktree(g, args.k) if args.oriented else recognize_ktree(g, args.k)
    if isinstance(found, RecognitionFailure):
        sys.stdout.write(_failure_json(found))
        _err(f"not a{'n oriented' if args.oriented else ''} {args.k}-tree: {found.detail}")
        return FAILED
    sys.stdout.write(json.dumps(build_order_to_json(found)) + "\n")
    return OK


def cmd_partition(args) -> int:
    _check_kl(args.k, args.l)
    g = _read_graph(args.input, args.oriented).to_graph()
    if args.oriented:
        order = recognize_oriented_ktree(g, args.k)
    else:
        order = recognize_ktree(g, args.k)
    if isinstance(order, RecognitionFailure):
        sys.stdout.write(_failure_json(order))
        _err(f"recognition at k={args.k} failed: {order.detail}")
        return FAILED
    if args.oriented:
        p = theorem2_partition(g, order, args.l)
        report = validate_oriented_partition(g, p, args.k, args.l)
        t = args.k - args.l
    else:
        p = theorem1_partition(g, order, args.l)
        report = validate_theorem1(g, p, args.k, args.l)
        t = args.k // (args.l + 1)
    if not report.ok:
        _err("constructed partition failed validation; nothing written")
        sys.stderr.write(report.render() + "\n")
        return FAILED
    _emit(dumps(PartitionDocument.from_partition(p, args.k, args.l, t)), args.out)
    return OK


def cmd_verify(args) -> int:
    gdoc = _read_graph(args.graph, args.oriented)
    pdoc = _read(args.partition)
    if not isinstance(pdoc, PartitionDocument):
        raise UsageError(f"{args.partition}: expected a partition document")
    if pdoc.directed != args.oriented:
        raise UsageError(f"{args.partition}: host directedness does not match --oriented")
    k = pdoc.k if args.k is None else args.k
    l = pdoc.l if args.l is None else args.l
    _check_kl(k, l)
    covered = {v for _, vs in pdoc.bags for v in vs}
    if covered != set(gdoc.vertices):
        raise UsageError("graph and partition cover different vertex sets")
    g = gdoc.to_graph()
    p = pdoc.to_partition()
    if args.oriented:
        report = validate_oriented_partition(g, p, k, l)
    else:
        report = validate_theorem1(g, p, k, l)
    sys.stdout.write(report.render() + "\n")
    return OK if report.ok else FAILED


def cmd_gen(args) -> int:
    try:
        spec = GenSpec(args.n, args.k, args.seed, args.partial)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    g, order = random_ktree(spec)
    graph = orient_from_buildorder(order) if args.oriented else g
    _emit(dumps(GraphDocument.from_graph(graph, order)), args.out)
    return OK


def cmd_export_dot(args) -> int:
    sys.stdout.write(to_dot(_read(args.input)))
    return OK


def cmd_oracle(args) -> int:
    g = _read_graph(args.input, False).to_graph()
    try:
        p = oracle_exists_partition(g, args.l, args.t, cap=args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if p is None:
        _err(f"no {args.l}-tree-partition with connected {args.t}-tree bags exists")
        return FAILED
    # Largest k whose guaranteed bag parameter floor(k/(l+1)) equals t.
    k = args.t * (args.l + 1) + args.l
    _emit(dumps(PartitionDocument.from_partition(p, k, args.l, args.t)), args.out)
    return OK


def cmd_tightness(args) -> int:
    try:
        tight = certify_tightness(args.k, args.l, cap=args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    t = args.k // (args.l + 1)
    print(f"k={args.k} l={args.l} t={t} tight={'yes' if tight else 'no'}")
    return OK if tight else FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ktreepart", description="k-tree recognition and l-tree-partitions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="recognise a (oriented) k-tree and print its build order")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--oriented", action="store_true")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("partition", help="construct and self-verify an l-tree-partition")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--oriented", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("verify", help="check a partition document against a graph document")
    p.add_argument("graph")
    p.add_argument("partition")
    p.add_argument("--k", type=int, help="defaults to the partition document's k")
    p.add_argument("--l", type=int, help="defaults to the partition document's l")
    p.add_argument("--oriented", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a seeded random k-tree with its build order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--partial", action="store_true", help="allow attachments smaller than k")
    p.add_argument("--oriented", action="store_true", help="orient edges along the build order")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export-dot", help="render a graph or partition document as DOT")
    p.add_argument("input")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("oracle", help="brute-force search for an l-tree-partition with t-tree bags")
    p.add_argument("input")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP, help="vertex limit (Bell-number growth)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("tightness", help="certify that K_{k+1} needs t = floor(k/(l+1))")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_TIGHTNESS_CAP)
    p.set_defaults(func=cmd_tightness)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
