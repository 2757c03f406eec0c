"""Command-line interface.

Exit codes: 0 success, 1 bad input or a failed check, 2 size limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .arborescence import arborescence_weight, enumerate_arborescences
from .errors import GraphError, GuardRailError
from .graph import Digraph
from .isolation import partitioned_factor, sequential_factor
from .matrix import Matrix, det_reference, det_via_arborescences, digraph_to_matrix, matrix_to_digraph
from .symbolic import Expr, canonical_polynomial, format_weight, render, to_ast
from .transforms import combine_all_parallel, move_all_to_root
from .verify import SUITES, run_all

METHODS = ("tree", "reference", "factor", "factor-sequential", "factor-partitioned")


def _as_matrix(obj) -> Matrix:
    return digraph_to_matrix(obj) if isinstance(obj, Digraph) else obj


def _as_digraph(obj) -> Digraph:
    return obj if isinstance(obj, Digraph) else matrix_to_digraph(obj)


def _parse_order(text: str | None) -> list[int] | None:
    if not text:
        return None
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise GraphError(f"bad --order {text!r}; expected e.g. 3,2,1") from None


def _factor(g: Digraph, strategy: str, order=None, rotate=True, on_graph=None):
    if strategy == "sequential":
        return sequential_factor(g, order, rotate=rotate, on_graph=on_graph)
    return partitioned_factor(g, order, on_graph=on_graph)


def cmd_det(args) -> int:
    A = _as_matrix(io.load(args.file))
    method = args.method
    if method == "tree":
        value = det_via_arborescences(A)
    elif method == "reference":
        value = det_reference(A)
    else:
        strategy = "partitioned" if method == "factor-partitioned" else "sequential"
        print(_factor(matrix_to_digraph(A), strategy).render())
        return 0
    print(format_weight(value))
    return 0


def cmd_enumerate(args) -> int:
    g = _as_digraph(io.load(args.file))
    total = 0
    for arb in enumerate_arborescences(g, args.root):
        arcs = sorted(arb.arc_objects(g), key=lambda a: (a.source, a.target, a.id))
        w = arborescence_weight(arb, g)
        total = total + w
        print(" ".join(f"{a.source}->{a.target}" for a in arcs) + "\t" + format_weight(w))
    print(format_weight(canonical_polynomial(total) if isinstance(total, Expr) else total))
    return 0


class _DotWriter:
    def __init__(self, directory: Path):
        self.dir = directory
        self.dir.mkdir(parents=True, exist_ok=True)
        self.manifest: list[dict] = []

    def write(self, kind: str, g: Digraph, info: dict | None = None) -> None:
        info = info or {}
        name = f"{len(self.manifest):03d}_{kind}.dot"
        (self.dir / name).write_text(io.to_dot(g, name[:-4]), encoding="utf-8")
        self.manifest.append({
            "file": name,
            "kind": kind,
            "trace": [list(block) for block in info.get("trace", ())],
            "vertices": list(info.get("vertices", [])),
        })

    def __call__(self, kind: str, g: Digraph, info: dict) -> None:
        self.write(kind, g, info)

    def close(self) -> None:
        (self.dir / "manifest.json").write_text(json.dumps(self.manifest, indent=2) + "\n", encoding="utf-8")


def cmd_factor(args) -> int:
    g = _as_digraph(io.load(args.file))
    writer = _DotWriter(Path(args.emit_dot)) if args.emit_dot else None
    if writer:
        writer.write("input", g)
    f = _factor(g, args.strategy, _parse_order(args.order), rotate=not args.no_rotate, on_graph=writer)
    if writer:
        writer.close()
    if args.format == "json":
        out = {
            "strategy": f.strategy,
            "leaves": len(f),
            "pruned": f.pruned,
            "terms": [{"text": format_weight(t), "ast": to_ast(t), "trace": [list(b) for b in tr]}
                      for t, tr in zip(f.terms, f.isolation_order_trace)],
            "total": format_weight(f.expanded()),
        }
        print(json.dumps(out, indent=2))
        return 0
    for t in f.terms:
        print(format_weight(t))
    expanded = f.expanded()
    print(f"# {len(f)} leaves ({f.strategy}); determinant = {render(expanded)}")
    return 0


def cmd_verify(args) -> int:
    results = run_all(seed=args.seed, cases=args.cases, only=args.suite)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{r.name:<{width}}  {r.passed}/{r.total} passed")
        for msg in r.failures[:5]:
            print(f"  FAIL {msg}")
    return 0 if all(r.ok for r in results) else 1


def cmd_export_dot(args) -> int:
    g = _as_digraph(io.load(args.file))
    writer = _DotWriter(Path(args.dir))
    writer.write("graph", g)
    if args.isolate:
        writer.write("moved", combine_all_parallel(move_all_to_root(g)))
    writer.close()
    for entry in writer.manifest:
        print(Path(args.dir) / entry["file"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treedet", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("det", help="determinant of a matrix file")
    s.add_argument("file")
    s.add_argument("--method", choices=METHODS, default="tree")
    s.set_defaults(func=cmd_det)

    s = sub.add_parser("enumerate", help="list every arborescence and the total weight")
    s.add_argument("file")
    s.add_argument("--root", type=int, default=0)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("factor", help="factor the determinant by vertex isolation")
    s.add_argument("file")
    s.add_argument("--strategy", choices=("sequential", "partitioned"), default="sequential")
    s.add_argument("--order", help="comma-separated isolation order, e.g. 3,2,1")
    s.add_argument("--no-rotate", action="store_true",
                   help="inside each branch keep the given order instead of continuing after the rooted vertex")
    s.add_argument("--emit-dot", metavar="DIR", help="write every intermediate digraph as DOT")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("verify", help="run the randomized sum-preservation suites")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--cases", type=int, default=100)
    s.add_argument("--suite", action="append", choices=sorted(SUITES))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export-dot", help="write the matrix digraph as DOT")
    s.add_argument("file")
    s.add_argument("dir")
    s.add_argument("--isolate", action="store_true",
                   help="also write the graph after moving arcs to the root and merging parallels")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GuardRailError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
