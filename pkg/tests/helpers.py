"""Independent oracles and fixtures data shared by the test modules."""

import itertools
from fractions import Fraction

from hypothesis import strategies as st

from treedet.graph import Digraph
from treedet.matrix import assemble, matrix_to_digraph, symbolic_u
from treedet.symbolic import parse, to_poly

# The six summands of the 3x3 vertex-isolation example, written out by hand.
WORKED_TERMS = [
    "u11(u12+u22)(u13+u23+u33)",
    "u11 u32 (u13+u33)",
    "(u21+u31) u22 (u33+u23)",
    "u21 u22 u13",
    "u31 (u12+u32) u33",
    "u21 u32 u33",
]


def leibniz_det(rows):
    """Permutation-expansion determinant; works for numbers and expressions alike."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total + term
    return total


def weak_orderings_brute(n: int) -> int:
    """Count maps [n] -> {0..k-1} that hit every block, summed over k (weak orderings)."""
    count = 0
    for k in range(1, n + 1):
        for f in itertools.product(range(k), repeat=n):
            if len(set(f)) == k:
                count += 1
    return count if n else 1


def complete_symbolic(n: int) -> Digraph:
    return matrix_to_digraph(assemble(symbolic_u(n)))


def ones(names) -> dict:
    return {name: Fraction(1) for name in names}


def sum_polys(polys):
    acc = {}
    for p in polys:
        for m, c in p.items():
            acc[m] = acc.get(m, 0) + c
    return {m: c for m, c in acc.items() if c}


def worked_poly():
    return sum_polys(to_poly(parse(t)) for t in WORKED_TERMS)


@st.composite
def digraphs(draw, max_n=5, root_valid=False):
    """Random multidigraphs on 0..n with small integer weights."""
    n = draw(st.integers(1, max_n))
    pairs = [(s, t) for s in range(n + 1) for t in range(n + 1)
             if s != t and not (root_valid and t == 0)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=3 * n + 3))
    return Digraph.from_arcs(n + 1, [(s, t, draw(st.integers(1, 9))) for s, t in chosen])
