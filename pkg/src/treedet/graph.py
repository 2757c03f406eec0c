"""Immutable weighted multidigraphs on vertices ``0..n`` (vertex 0 is the root)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Sequence

from .errors import RootQuery, SelfLoop, UnknownArc, VertexOutOfRange
from .symbolic import Expr, format_weight

ROOT = 0


@dataclass(frozen=True)
class Arc:
    id: int
    source: int
    target: int
    weight: Any

    def __str__(self):
        return f"{self.source}->{self.target}[{format_weight(self.weight)}]"


class SccPartition:
    """Strongly connected components; ``component_of[v]`` is a component index."""

    def __init__(self, component_of: Sequence[int]):
        self.component_of = tuple(component_of)

    @property
    def count(self) -> int:
        return max(self.component_of, default=-1) + 1

    def same(self, u: int, v: int) -> bool:
        return self.component_of[u] == self.component_of[v]

    def components(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for v, c in enumerate(self.component_of):
            out[c].append(v)
        return out


def tarjan_scc(vertex_count: int, successors: Sequence[Sequence[int]]) -> SccPartition:
    """Iterative Tarjan; components numbered in order of completion."""
    index = [-1] * vertex_count
    low = [0] * vertex_count
    on_stack = [False] * vertex_count
    comp = [-1] * vertex_count
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for start in range(vertex_count):
        if index[start] != -1:
            continue
        work = [(start, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            succ = successors[v]
            while pos < len(succ):
                w = succ[pos]
                pos += 1
                if index[w] == -1:
                    work.append((v, pos))
                    work.append((w, 0))
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
    return SccPartition(comp)


class Digraph:
    """Weighted multidigraph value.

    Arcs keep insertion order and carry stable integer ids.  Every
    "modifying" method returns a new graph; the original is never touched.
    """

    def __init__(self, vertex_count: int, arcs: Iterable[Arc] = (), next_id: int | None = None):
        if vertex_count < 1:
            raise ValueError("a digraph needs at least one vertex")
        self._n = vertex_count
        self._arcs = tuple(arcs)
        index = {}
        for a in self._arcs:
            self._check_vertex(a.source)
            self._check_vertex(a.target)
            if a.source == a.target:
                raise SelfLoop(f"self-loop at vertex {a.source}")
            if a.weight is None:
                raise TypeError(f"arc {a.id} has no weight")
            if a.id in index:
                raise ValueError(f"duplicate arc id {a.id}")
            index[a.id] = a
        self._index = index
        top = max(index, default=-1) + 1
        self._next_id = top if next_id is None else max(next_id, top)

    @classmethod
    def from_arcs(cls, vertex_count: int, arcs: Iterable[tuple[int, int, Any]]) -> "Digraph":
        """Build from ``(source, target, weight)`` triples; ids follow input order."""
        g = cls(vertex_count)
        for s, t, w in arcs:
            g, _ = g.add_arc(s, t, w)
        return g

    # -- basic accessors --

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def n(self) -> int:
        """Number of non-root vertices."""
        return self._n - 1

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return self._arcs

    @property
    def next_id(self) -> int:
        return self._next_id

    def __len__(self):
        return len(self._arcs)

    def __iter__(self):
        return iter(self._arcs)

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._n == other._n and self._arcs == other._arcs

    def __hash__(self):
        return hash((self._n, self._arcs))

    def __repr__(self):
        return f"Digraph({self._n}, [{', '.join(map(str, self._arcs))}])"

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self._n):
            raise VertexOutOfRange(f"vertex {v!r} not in 0..{self._n - 1}")

    def arc(self, arc_id: int) -> Arc:
        try:
            return self._index[arc_id]
        except KeyError:
            raise UnknownArc(f"no arc with id {arc_id}") from None

    def has_arc(self, arc_id: int) -> bool:
        return arc_id in self._index

    def in_arcs(self, v: int) -> list[Arc]:
        self._check_vertex(v)
        return [a for a in self._arcs if a.target == v]

    def out_arcs(self, v: int) -> list[Arc]:
        self._check_vertex(v)
        return [a for a in self._arcs if a.source == v]

    def arcs_between(self, source: int, target: int) -> list[Arc]:
        return [a for a in self._arcs if a.source == source and a.target == target]

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(a.weight, Expr) for a in self._arcs)

    # -- construction of new values --

    def add_arc(self, source: int, target: int, weight: Any) -> tuple["Digraph", int]:
        self._check_vertex(source)
        self._check_vertex(target)
        if source == target:
            raise SelfLoop(f"self-loop at vertex {source}")
        new = Arc(self._next_id, source, target, weight)
        return Digraph(self._n, self._arcs + (new,), self._next_id + 1), new.id

    def with_arcs(self, arcs: Iterable[Arc]) -> "Digraph":
        """Same vertex set, new arc tuple; the id counter never goes backwards."""
        return Digraph(self._n, arcs, self._next_id)

    def without(self, arc_ids: Iterable[int]) -> "Digraph":
        drop = set(arc_ids)
        for i in drop:
            self.arc(i)
        return self.with_arcs(a for a in self._arcs if a.id not in drop)

    # -- connectivity --

    @cached_property
    def scc(self) -> SccPartition:
        succ: list[list[int]] = [[] for _ in range(self._n)]
        for a in self._arcs:
            succ[a.source].append(a.target)
        return tarjan_scc(self._n, succ)

    def strongly_connected(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return self.scc.same(u, v)

    def reachable_from(self, v: int) -> set[int]:
        self._check_vertex(v)
        seen = {v}
        todo = [v]
        while todo:
            x = todo.pop()
            for a in self._arcs:
                if a.source == x and a.target not in seen:
                    seen.add(a.target)
                    todo.append(a.target)
        return seen

    # -- structural predicates --

    @property
    def is_root_valid(self) -> bool:
        return not any(a.target == ROOT for a in self._arcs)

    def is_rooted_at(self, v: int) -> bool:
        self._check_vertex(v)
        if v == ROOT:
            raise RootQuery("vertex 0 is the root; rootedness is defined for v != 0")
        ins = self.in_arcs(v)
        return len(ins) == 1 and ins[0].source == ROOT

    def is_isolated_at(self, v: int) -> bool:
        return self.is_rooted_at(v) and not self.out_arcs(v)

    def is_fully_isolated(self) -> bool:
        return all(self.is_isolated_at(v) for v in range(1, self._n))
