"""Factoring determinants by rooting and isolating vertices of a matrix digraph.

A vertex ``v`` is *rooted* when its only in-arc is (0, v) and *isolated*
when it is rooted and has no out-arcs.  Splitting a graph into the part
rooted at ``v`` and the part without (0, v) partitions its arborescences;
a rooted vertex can then be isolated by moving each of its out-arcs to the
root and merging the parallel root arcs that result.  Repeating until every
vertex is isolated leaves star-shaped digraphs whose weights are products of
root-arc weights, i.e. a factored expansion of the determinant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Sequence

from .errors import NoRootArc, NotRooted, RootHasInArcs, RootQuery, TooLarge
from .graph import ROOT, Digraph
from .symbolic import (Expr, evaluate, expr_sum, format_weight, from_poly,
                       is_zero, render, to_poly)
from .transforms import combine_arcs_id, move_arc

GraphHook = Callable[[str, Digraph, dict], None]


@dataclass(frozen=True)
class Leaf:
    """A fully isolated digraph: one root arc per vertex."""

    factors: tuple[Any, ...]  # root-arc weight of vertex 1..n
    trace: tuple[tuple[int, ...], ...]  # blocks of vertices, in isolation order
    graph: Digraph = field(compare=False, repr=False)

    @property
    def term(self) -> Any:
        out: Any = 1
        for f in self.factors:
            out = out * f
        return out


@dataclass
class Factorization:
    strategy: str
    leaves: list[Leaf]
    pruned: int = 0

    @property
    def terms(self) -> list[Any]:
        return [leaf.term for leaf in self.leaves]

    @property
    def isolation_order_trace(self) -> list[tuple[tuple[int, ...], ...]]:
        return [leaf.trace for leaf in self.leaves]

    def __len__(self):
        return len(self.leaves)

    def total(self) -> Any:
        """Sum of the terms; symbolic totals are left unexpanded."""
        terms = self.terms
        if any(isinstance(t, Expr) for t in terms):
            return expr_sum(terms)
        out: Any = 0
        for t in terms:
            out = out + t
        return out

    def evaluate(self, assignment=None) -> Any:
        out: Any = 0
        for t in self.terms:
            out = out + evaluate(t, assignment)
        return out

    def expanded(self) -> Any:
        """Canonical polynomial of the total (numbers pass through)."""
        terms = self.terms
        if not any(isinstance(t, Expr) for t in terms):
            return self.total()
        poly: dict = {}
        for t in terms:
            for m, c in to_poly(t).items():
                poly[m] = poly.get(m, 0) + c
        return from_poly({m: c for m, c in poly.items() if c})

    def render(self) -> str:
        if not self.leaves:
            return "0"
        if not any(isinstance(t, Expr) for t in self.terms):
            return format_weight(self.total())
        return " + ".join(render(t) for t in self.terms)


def _root_arcs(g: Digraph, v: int):
    return g.arcs_between(ROOT, v)


def _ensure_root_arc(g: Digraph, v: int) -> Digraph:
    if not _root_arcs(g, v):
        g, _ = g.add_arc(ROOT, v, 0)
    return g


def root_split(g: Digraph, v: int) -> tuple[Digraph, Digraph]:
    """Return (rooted at v, without any root arc to v).

    Parallel root arcs to ``v`` are merged first, so the rooted part has a
    single in-arc at ``v``.
    """
    g._check_vertex(v)
    if v == ROOT:
        raise RootQuery("cannot split at the root vertex")
    roots = _root_arcs(g, v)
    if not roots:
        raise NoRootArc(f"no arc (0, {v})")
    keep = roots[0].id
    for other in roots[1:]:
        g, keep = combine_arcs_id(g, keep, other.id)
    rooted = g.without(a.id for a in g.in_arcs(v) if a.id != keep)
    unrooted = g.without([keep])
    return rooted, unrooted


def isolate_vertex(g: Digraph, j: int) -> Digraph:
    """Move every out-arc (j, k) of a rooted vertex to (0, k) and merge root arcs."""
    if not g.is_rooted_at(j):
        raise NotRooted(f"vertex {j} is not rooted")
    existing = {}
    moved: dict[int, list[int]] = {}
    for a in g.out_arcs(j):
        k = a.target
        if k not in moved:
            existing[k] = [x.id for x in _root_arcs(g, k)]
            moved[k] = []
        g = move_arc(g, a.id, ROOT)
        moved[k].append(a.id)
    for k, ids in moved.items():
        ids = existing[k] + ids
        keep = ids[0]
        for other in ids[1:]:
            g, keep = combine_arcs_id(g, keep, other)
    return g


def _check_input(g: Digraph, order: Sequence[int] | None) -> list[int]:
    if not g.is_root_valid:
        raise RootHasInArcs("vertex 0 has in-arcs; not a matrix digraph")
    everyone = list(range(1, g.vertex_count))
    if order is None:
        return everyone
    order = list(order)
    if sorted(order) != everyone:
        raise ValueError(f"order {order} is not a permutation of 1..{g.n}")
    return order


def _leaf(g: Digraph, trace) -> Leaf:
    factors = []
    for v in range(1, g.vertex_count):
        (arc,) = g.in_arcs(v)
        factors.append(arc.weight)
    return Leaf(tuple(factors), tuple(trace), g)


def _emit(hook: GraphHook | None, kind: str, g: Digraph, **info) -> None:
    if hook is not None:
        hook(kind, g, info)


def _run(g: Digraph, active: list[int], strategy: str, children, hook) -> Factorization:
    leaves: list[Leaf] = []
    pruned = 0
    stack = [(g, active, ())]
    while stack:
        h, act, trace = stack.pop()
        if not act:
            leaf = _leaf(h, trace)
            if any(is_zero(f) for f in leaf.factors):
                pruned += 1
            else:
                leaves.append(leaf)
            continue
        kids = list(children(h, act, trace))
        stack.extend(reversed(kids))
    return Factorization(strategy, leaves, pruned)


def sequential_factor(g: Digraph, order: Sequence[int] | None = None, *,
                      rotate: bool = True, on_graph: GraphHook | None = None) -> Factorization:
    """Sequential rooting: one leaf per ordering of the vertices (n! on complete graphs).

    At every level the active vertices are rooted one after another in
    ``order``.  Inside the branch rooted at the k-th vertex, the remaining
    vertices are taken as those after it followed by those before it
    (``rotate=True``) or simply in ``order`` (``rotate=False``).  Zero
    weight root arcs are added where missing and zero leaves are dropped.
    """
    active = _check_input(g, order)

    def children(h, act, trace):
        rest = h
        for idx, j in enumerate(act):
            rest = _ensure_root_arc(rest, j)
            rooted, rest = root_split(rest, j)
            step = trace + ((j,),)
            _emit(on_graph, "rooted", rooted, trace=step, vertices=[j])
            iso = isolate_vertex(rooted, j)
            nxt = act[idx + 1:] + act[:idx] if rotate else act[:idx] + act[idx + 1:]
            _emit(on_graph, "leaf" if not nxt else "isolated", iso, trace=step, vertices=[j])
            yield iso, nxt, step

    return _run(g, active, "sequential", children, on_graph)


def partitioned_factor(g: Digraph, order: Sequence[int] | None = None, *,
                       on_graph: GraphHook | None = None) -> Factorization:
    """Partitioned rooting: one branch per nonempty rooted subset at every step.

    Leaves correspond to weak orderings of the vertices, so a complete
    digraph on n vertices yields ordered_bell(n) of them.
    """
    active = _check_input(g, order)

    def children(h, act, trace):
        for size in range(1, len(act) + 1):
            for subset in itertools.combinations(act, size):
                chosen = set(subset)
                sub = h
                for v in act:
                    if v in chosen:
                        sub = root_split(_ensure_root_arc(sub, v), v)[0]
                    elif _root_arcs(sub, v):
                        sub = root_split(sub, v)[1]
                step = trace + (tuple(subset),)
                _emit(on_graph, "rooted", sub, trace=step, vertices=list(subset))
                for v in subset:
                    sub = isolate_vertex(sub, v)
                nxt = [v for v in act if v not in chosen]
                _emit(on_graph, "leaf" if not nxt else "isolated", sub, trace=step, vertices=list(subset))
                yield sub, nxt, step

    return _run(g, active, "partitioned", children, on_graph)


MAX_COUNT_ARG = 20


def _guard(n: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_COUNT_ARG:
        raise TooLarge(f"n = {n} exceeds {MAX_COUNT_ARG}")


def ordered_bell(n: int) -> int:
    """Number of weak orderings of n items: B(0) = 1, B(n) = sum_k C(n, k) B(n - k)."""
    _guard(n)
    b = [1]
    for m in range(1, n + 1):
        b.append(sum(comb(m, k) * b[m - k] for k in range(1, m + 1)))
    return b[n]


def rooted_subset_count(n: int) -> int:
    """Rooted subgraphs per partitioned step: 2**n - 1 (= S(n+1, 2))."""
    _guard(n)
    return 2**n - 1


def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind by the standard triangle."""
    if n < 0 or k < 0:
        raise ValueError("arguments must be non-negative")
    row = [1] + [0] * k  # S(0, j)
    for m in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, k + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]
