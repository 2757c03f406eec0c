"""Randomized checks of the sum-preservation properties against brute force.

Each suite draws its own graphs from a seeded ``random.Random`` and
compares arborescence sums before and after a rewrite.  Rational weights
are compared exactly, float weights to a relative tolerance.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .arborescence import arborescence_sum, count_arborescences
from .errors import PreconditionNewSourceTarget, PreconditionSourceTarget, SelfLoop
from .graph import ROOT, Arc, Digraph
from .isolation import isolate_vertex, partitioned_factor, root_split, sequential_factor
from .matrix import assemble, det_reference, det_via_arborescences, matrix_to_digraph
from .transforms import combine_all_parallel, combine_arcs, move_arc

REL_TOL = 1e-9


def close(a, b, rel: float = REL_TOL) -> bool:
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


@dataclass
class SuiteResult:
    name: str
    total: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return self.total - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, message: str) -> bool:
        if not condition:
            self.failures.append(message)
        return condition

    def __str__(self):
        return f"{self.name}: {self.passed}/{self.total} passed"


def random_digraph(rng: random.Random, n: int, *, root_p: float = 0.75, arc_p: float = 0.45,
                   parallel_p: float = 0.15) -> Digraph:
    """Root-valid multidigraph on 0..n with positive rational weights."""
    triples = []
    for j in range(1, n + 1):
        for i in range(n + 1):
            if i == j:
                continue
            if rng.random() < (root_p if i == ROOT else arc_p):
                triples.append((i, j, Fraction(rng.randint(1, 9), rng.randint(1, 4))))
                if rng.random() < parallel_p:
                    triples.append((i, j, Fraction(rng.randint(1, 9), rng.randint(1, 4))))
    rng.shuffle(triples)
    return Digraph.from_arcs(n + 1, triples)


def as_float(g: Digraph) -> Digraph:
    return g.with_arcs(Arc(a.id, a.source, a.target, float(a.weight)) for a in g.arcs)


def move_arc_suite(seed: int = 0, cases: int = 500, max_n: int = 5) -> SuiteResult:
    """Legal arc moves keep the sum, the arborescence count, and the count through the moved arc."""
    rng = random.Random(f"{seed}:move")
    res = SuiteResult("move-arc")
    while res.total < cases:
        g = random_digraph(rng, rng.randint(2, max_n))
        if not g.arcs:
            continue
        e = rng.choice(g.arcs)
        c = rng.choice([v for v in range(g.vertex_count) if v not in (e.source, e.target)] or [e.source])
        try:
            h = move_arc(g, e.id, c)
        except (PreconditionSourceTarget, PreconditionNewSourceTarget, SelfLoop):
            continue
        res.total += 1
        tag = f"case {res.total}: {g!r} arc {e.id} -> source {c}"
        res.check(arborescence_sum(g) == arborescence_sum(h), f"{tag}: rational sum changed")
        gf = as_float(g)
        hf = move_arc(gf, e.id, c)
        res.check(close(arborescence_sum(gf), arborescence_sum(hf)), f"{tag}: float sum changed")
        res.check(count_arborescences(g, containing=e.id) == count_arborescences(h, containing=e.id),
                  f"{tag}: count through moved arc changed")
        res.check(count_arborescences(g) == count_arborescences(h), f"{tag}: count changed")
        res.check(h.vertex_count == g.vertex_count and len(h) == len(g)
                  and Counter(a.target for a in h.arcs) == Counter(a.target for a in g.arcs)
                  and Counter(a.weight for a in h.arcs) == Counter(a.weight for a in g.arcs),
                  f"{tag}: move changed more than one source")
    return res


def combine_arcs_suite(seed: int = 0, cases: int = 500, max_n: int = 5) -> SuiteResult:
    """Merging parallel arcs keeps the sum for every root; full merging is idempotent."""
    rng = random.Random(f"{seed}:combine")
    res = SuiteResult("combine-arcs")
    while res.total < cases:
        g = random_digraph(rng, rng.randint(1, max_n))
        if not g.arcs:
            continue
        e = rng.choice(g.arcs)
        g, twin = g.add_arc(e.source, e.target, Fraction(rng.randint(-4, 9), rng.randint(1, 4)))
        res.total += 1
        tag = f"case {res.total}: {g!r} arcs {e.id},{twin}"
        h = combine_arcs(g, e.id, twin)
        gf, hf = as_float(g), combine_arcs(as_float(g), e.id, twin)
        for r in range(g.vertex_count):
            res.check(arborescence_sum(g, r) == arborescence_sum(h, r), f"{tag}: sum changed at root {r}")
            res.check(close(arborescence_sum(gf, r), arborescence_sum(hf, r)),
                      f"{tag}: float sum changed at root {r}")
        full = combine_all_parallel(g)
        res.check(combine_all_parallel(full) == full, f"{tag}: combine_all_parallel not idempotent")
        res.check(arborescence_sum(full) == arborescence_sum(g), f"{tag}: combine_all_parallel changed sum")
    return res


def root_split_suite(seed: int = 0, cases: int = 100, max_n: int = 5) -> SuiteResult:
    """sum(g) = sum(rooted) + sum(unrooted) at every split of a sequential chain,
    and isolating the rooted vertex keeps the rooted sum."""
    rng = random.Random(f"{seed}:split")
    res = SuiteResult("root-split")
    for _ in range(cases):
        g = random_digraph(rng, rng.randint(1, max_n))
        res.total += 1
        tag = f"case {res.total}: {g!r}"
        h = g
        for v in range(1, g.vertex_count):
            if not h.arcs_between(ROOT, v):
                continue
            rooted, unrooted = root_split(h, v)
            s_rooted = arborescence_sum(rooted)
            res.check(arborescence_sum(h) == s_rooted + arborescence_sum(unrooted),
                      f"{tag}: split at {v} broke the partition identity")
            res.check(arborescence_sum(isolate_vertex(rooted, v)) == s_rooted,
                      f"{tag}: isolating {v} changed the sum")
            h = unrooted
    return res


def _random_u(rng: random.Random, n: int) -> list[list[float]]:
    return [[rng.random() for _ in range(n)] for _ in range(n)]


def matrix_tree_suite(seed: int = 0, cases: int = 200, max_n: int = 6) -> SuiteResult:
    """Arborescence determinant vs elimination on matrices assembled from random weights."""
    rng = random.Random(f"{seed}:matrix-tree")
    res = SuiteResult("matrix-tree")
    for _ in range(cases):
        A = assemble(_random_u(rng, rng.randint(1, max_n)))
        res.total += 1
        tree, ref = det_via_arborescences(A), det_reference(A)
        res.check(close(tree, ref), f"case {res.total}: tree {tree!r} != reference {ref!r} for {A.tolist()}")
    return res


def factor_suite(seed: int = 0, cases: int = 100, max_n: int = 5) -> SuiteResult:
    """Both factoring strategies evaluate to the reference determinant."""
    rng = random.Random(f"{seed}:factor")
    res = SuiteResult("factor")
    for _ in range(cases):
        n = rng.randint(1, max_n)
        A = assemble([[rng.uniform(-1, 1) for _ in range(n)] for _ in range(n)])
        g = matrix_to_digraph(A)
        ref = det_reference(A)
        res.total += 1
        for name, f in (("sequential", sequential_factor(g)), ("partitioned", partitioned_factor(g))):
            res.check(close(f.evaluate(), ref), f"case {res.total}: {name} {f.evaluate()!r} != {ref!r}")
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "move-arc": move_arc_suite,
    "combine-arcs": combine_arcs_suite,
    "root-split": root_split_suite,
    "matrix-tree": matrix_tree_suite,
    "factor": factor_suite,
}


def run_all(seed: int = 0, cases: int = 100, only: list[str] | None = None) -> list[SuiteResult]:
    names = only or list(SUITES)
    return [SUITES[name](seed=seed, cases=cases) for name in names]
