"""Brute-force arborescence enumeration: the ground truth for every rewrite.

Each non-root vertex picks one of its in-arcs; a selection is kept when
following the chosen parents from every vertex ends at the root.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Any, Iterator

from .errors import TooLarge
from .graph import Arc, Digraph
from .symbolic import Expr, from_poly, to_poly

MAX_SELECTIONS = 10**7


@dataclass(frozen=True)
class Arborescence:
    root: int
    arcs: tuple[int, ...]  # arc ids, ordered by target vertex

    def arc_objects(self, g: Digraph) -> list[Arc]:
        return [g.arc(i) for i in self.arcs]


def _choices(g: Digraph, root: int) -> list[list[Arc]] | None:
    g._check_vertex(root)
    choices = []
    for v in range(g.vertex_count):
        if v == root:
            continue
        ins = [a for a in g.in_arcs(v) if a.source != v]
        if not ins:
            return None
        choices.append(ins)
    return choices


def selection_count(g: Digraph, root: int = 0) -> int:
    """Size of the Cartesian product the enumerator walks (product of in-degrees)."""
    choices = _choices(g, root)
    return 0 if choices is None else prod(len(c) for c in choices)


def _acyclic(parent: list[int], root: int) -> bool:
    # 0 = unseen, 1 = on current path, 2 = known to reach root
    state = [0] * len(parent)
    state[root] = 2
    for v in range(len(parent)):
        path = []
        x = v
        while state[x] == 0:
            state[x] = 1
            path.append(x)
            x = parent[x]
        if state[x] == 1:
            return False
        for y in path:
            state[y] = 2
    return True


def _selections(g: Digraph, root: int) -> Iterator[tuple[Arc, ...]]:
    choices = _choices(g, root)
    if choices is None:
        return
    total = prod(len(c) for c in choices)
    if total > MAX_SELECTIONS:
        raise TooLarge(f"{total} in-arc selections exceed the enumeration limit of {MAX_SELECTIONS}")
    parent = [root] * g.vertex_count
    for combo in itertools.product(*choices):
        for a in combo:
            parent[a.target] = a.source
        if _acyclic(parent, root):
            yield combo


def enumerate_arborescences(g: Digraph, root: int = 0) -> list[Arborescence]:
    """Every spanning arborescence of ``g`` rooted at ``root``, each exactly once."""
    return [Arborescence(root, tuple(a.id for a in combo)) for combo in _selections(g, root)]


def count_arborescences(g: Digraph, root: int = 0, containing: int | None = None) -> int:
    if containing is None:
        return sum(1 for _ in _selections(g, root))
    return sum(1 for combo in _selections(g, root) if any(a.id == containing for a in combo))


def _product(weights) -> Any:
    out: Any = 1
    for w in weights:
        out = out * w
    return out


def arborescence_weight(a: Arborescence, g: Digraph) -> Any:
    """Product of the arc weights; raises UnknownArc for ids not in ``g``."""
    return _product(g.arc(i).weight for i in a.arcs)


def arborescence_sum(g: Digraph, root: int = 0) -> Any:
    """Sum of arborescence weights; symbolic results come back in canonical form."""
    terms = [_product(a.weight for a in combo) for combo in _selections(g, root)]
    if not any(isinstance(t, Expr) for t in terms):
        total: Any = 0
        for t in terms:
            total = total + t
        return total
    poly: dict = {}
    for t in terms:
        for m, c in to_poly(t).items():
            poly[m] = poly.get(m, 0) + c
    return from_poly(poly)


def is_valid_arborescence(g: Digraph, arc_ids, root: int = 0) -> bool:
    """Check the four defining properties directly on a set of arc ids of ``g``."""
    arcs = [g.arc(i) for i in arc_ids]
    indeg = [0] * g.vertex_count
    for a in arcs:
        indeg[a.target] += 1
    if indeg[root] != 0:
        return False
    if any(indeg[v] != 1 for v in range(g.vertex_count) if v != root):
        return False
    parent = [root] * g.vertex_count
    for a in arcs:
        parent[a.target] = a.source
    if not _acyclic(parent, root):
        return False
    reached = {root}
    frontier = [root]
    while frontier:
        x = frontier.pop()
        for a in arcs:
            if a.source == x and a.target not in reached:
                reached.add(a.target)
                frontier.append(a.target)
    return len(reached) == g.vertex_count
