"""Square matrices <-> matrix digraphs, and determinants computed both ways.

An n x n matrix ``A`` is read through its arc-weight decomposition

    a_ij = -u_ij              (i != j)
    a_jj = sum_k u_kj         (k = 1..n, u_jj being the root-arc weight)

so the digraph on ``0..n`` has an arc (i, j) of weight u_ij for every
nonzero off-diagonal entry and a root arc (0, j) of weight u_jj.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .arborescence import arborescence_sum
from .errors import NonNumericWeight, NotSquare, RootHasInArcs
from .graph import ROOT, Digraph
from .symbolic import (Expr, Var, canonical_polynomial, evaluate, format_weight,
                       is_zero, var_name)

SINGULAR_PIVOT = 1e-12


@dataclass(frozen=True)
class Matrix:
    entries: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise NotSquare("empty matrix")
        for r in rows:
            if len(r) != n:
                raise NotSquare(f"row of length {len(r)} in a {n}-row matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Any]]) -> "Matrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.entries[i][j]

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(x, Expr) for row in self.entries for x in row)

    def evaluate(self, assignment) -> "Matrix":
        return Matrix(tuple(tuple(evaluate(x, assignment) for x in row) for row in self.entries))

    def tolist(self) -> list[list[Any]]:
        return [list(r) for r in self.entries]


def _neg(x):
    return -x


def assemble(u: Sequence[Sequence[Any]]) -> Matrix:
    """Build the matrix from arc weights; ``u[i][j]`` is 0-based, ``u[j][j]`` the root arc."""
    n = len(u)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i != j:
                row.append(_neg(u[i][j]))
            else:
                col = 0
                for k in range(n):
                    col = col + u[k][j]
                row.append(col)
        rows.append(row)
    return Matrix.from_rows(rows)


def symbolic_u(n: int) -> list[list[Var]]:
    """The n x n array of weight variables u11 .. unn."""
    return [[Var(var_name(i + 1, j + 1)) for j in range(n)] for i in range(n)]


def _simplify(w, symbolic: bool):
    return canonical_polynomial(w) if symbolic else w


def u_decomposition(A: Matrix) -> list[list[Any]]:
    """Inverse of :func:`assemble`: off-diagonal u_ij = -a_ij, u_jj = a_jj - sum_{k!=j} u_kj."""
    n = A.n
    sym = A.is_symbolic
    u = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                u[i][j] = _simplify(_neg(A[i, j]), sym)
    for j in range(n):
        w = A[j, j]
        for k in range(n):
            if k != j:
                w = w - u[k][j]
        u[j][j] = _simplify(w, sym)
    return u


def matrix_to_digraph(A: Matrix) -> Digraph:
    """Matrix digraph on ``0..n``.

    Arcs are inserted column by column: (1, j), ..., (n, j), then (0, j).
    Zero off-diagonal weights never produce arcs; zero root arcs are kept
    only for symbolic matrices.
    """
    sym = A.is_symbolic
    u = u_decomposition(A)
    n = A.n
    triples = []
    for j in range(n):
        for i in range(n):
            if i != j and not is_zero(u[i][j]):
                triples.append((i + 1, j + 1, u[i][j]))
        if sym or not is_zero(u[j][j]):
            triples.append((ROOT, j + 1, u[j][j]))
    return Digraph.from_arcs(n + 1, triples)


def digraph_to_matrix(g: Digraph) -> Matrix:
    """Inverse of :func:`matrix_to_digraph`; parallel arc weights are summed."""
    if not g.is_root_valid:
        raise RootHasInArcs("vertex 0 has in-arcs; not a matrix digraph")
    n = g.n
    entries: list[list[Any]] = [[0] * n for _ in range(n)]
    for a in g.arcs:
        j = a.target - 1
        entries[j][j] = entries[j][j] + a.weight
        if a.source != ROOT:
            i = a.source - 1
            entries[i][j] = entries[i][j] - a.weight
    if g.is_symbolic:
        entries = [[canonical_polynomial(x) for x in row] for row in entries]
    return Matrix.from_rows(entries)


def det_via_arborescences(A: Matrix):
    """Determinant as the sum over arborescences of the matrix digraph."""
    return arborescence_sum(matrix_to_digraph(A), ROOT)


def det_reference(A: Matrix):
    """Gaussian elimination with partial pivoting.

    Integer/rational input is eliminated exactly; anything else in floating
    point, returning 0.0 once a pivot falls below ``SINGULAR_PIVOT``.
    """
    n = A.n
    for row in A.entries:
        for x in row:
            if isinstance(x, Expr) or isinstance(x, bool) or not isinstance(x, (int, float, Fraction)):
                raise NonNumericWeight(f"non-numeric entry {format_weight(x)}")
    is_exact = all(isinstance(x, (int, Fraction)) for row in A.entries for x in row)
    conv = Fraction if is_exact else float
    m = [[conv(x) for x in row] for row in A.entries]
    det = conv(1)
    for k in range(n):
        p = max(range(k, n), key=lambda r: abs(m[r][k]))
        pivot = m[p][k]
        if pivot == 0 or (not is_exact and abs(pivot) < SINGULAR_PIVOT):
            return conv(0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            det = -det
        det *= pivot
        for r in range(k + 1, n):
            f = m[r][k] / pivot
            if f:
                row_r, row_k = m[r], m[k]
                for c in range(k + 1, n):
                    row_r[c] -= f * row_k[c]
    return det
