"""File formats: matrix JSON/CSV, digraph JSON, and Graphviz DOT."""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import GraphError, NotSquare
from .graph import ROOT, Digraph
from .matrix import Matrix
from .symbolic import Expr, format_number, format_weight, parse


def parse_number(text: str):
    """Integers stay exact; anything with a point or exponent becomes float."""
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    if "/" in text:
        return Fraction(text)
    return float(text)


def _weight_from_json(x: Any):
    if isinstance(x, bool) or x is None:
        raise GraphError(f"invalid weight {x!r}")
    if isinstance(x, (int, float)):
        return x
    if isinstance(x, str):
        try:
            return parse_number(x)
        except ValueError:
            return parse(x)
    raise GraphError(f"invalid weight {x!r}")


def _weight_to_json(w: Any):
    if isinstance(w, Expr):
        return format_weight(w)
    if isinstance(w, Fraction):
        return int(w) if w.denominator == 1 else format_number(w)
    return w


def _symbolic_rows(rows):
    """Promote plain numbers to constants when any entry is symbolic."""
    if not any(isinstance(x, Expr) for r in rows for x in r):
        return rows
    return [[x if isinstance(x, Expr) else parse(format_number(Fraction(x))) for x in r] for r in rows]


def matrix_from_json(data: dict) -> Matrix:
    try:
        entries = data["entries"]
    except (KeyError, TypeError):
        raise GraphError("matrix JSON needs an 'entries' array") from None
    rows = [[_weight_from_json(x) for x in row] for row in entries]
    m = Matrix.from_rows(_symbolic_rows(rows))
    if "n" in data and data["n"] != m.n:
        raise NotSquare(f"'n' is {data['n']} but entries describe a {m.n}x{m.n} matrix")
    return m


def matrix_to_json(m: Matrix) -> dict:
    return {"n": m.n, "entries": [[_weight_to_json(x) for x in row] for row in m.entries]}


def matrix_from_csv(text: str) -> Matrix:
    rows = [[parse_number(c) for c in row] for row in csv.reader(io.StringIO(text)) if row]
    return Matrix.from_rows(rows)


def digraph_from_json(data: dict) -> Digraph:
    try:
        count = data["vertex_count"]
        arcs = data["arcs"]
    except (KeyError, TypeError):
        raise GraphError("digraph JSON needs 'vertex_count' and 'arcs'") from None
    return Digraph.from_arcs(
        count, ((a["source"], a["target"], _weight_from_json(a["weight"])) for a in arcs))


def digraph_to_json(g: Digraph) -> dict:
    return {
        "vertex_count": g.vertex_count,
        "arcs": [{"source": a.source, "target": a.target, "weight": _weight_to_json(a.weight)}
                 for a in g.arcs],
    }


def load(path: str | Path) -> Matrix | Digraph:
    """Read a matrix (JSON or CSV) or a digraph (JSON with ``vertex_count``)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphError(f"cannot read {path}: {exc.strerror}") from None
    if path.suffix.lower() == ".csv":
        try:
            return matrix_from_csv(text)
        except ValueError as exc:
            raise GraphError(f"{path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: invalid JSON ({exc.msg})") from None
    if isinstance(data, dict) and "vertex_count" in data:
        return digraph_from_json(data)
    return matrix_from_json(data)


def _dot_id(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Digraph, name: str = "G") -> str:
    lines = [f"digraph {_dot_id(name)} {{"]
    lines.append(f"  {ROOT} [shape=doublecircle];")
    for v in range(1, g.vertex_count):
        lines.append(f"  {v} [shape=circle];")
    for a in g.arcs:
        lines.append(f"  {a.source} -> {a.target} [label={_dot_id(format_weight(a.weight))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot_arcs(text: str) -> list[tuple[int, int, str]]:
    """Read back the edge statements written by :func:`to_dot`."""
    out = []
    for m in re.finditer(r'^\s*(\d+) -> (\d+) \[label="((?:[^"\\]|\\.)*)"\];', text, re.M):
        out.append((int(m.group(1)), int(m.group(2)), m.group(3)))
    return out
