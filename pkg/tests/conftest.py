import pytest

from treedet.graph import Digraph
from treedet.matrix import Matrix, matrix_to_digraph
from treedet.symbolic import ZERO, parse, u


@pytest.fixture
def full_matrix() -> Matrix:
    """Complete 3-vertex example matrix, symbolic."""
    return Matrix.from_rows([
        [parse("u11 + u21 + u31"), -u(1, 2), -u(1, 3)],
        [-u(2, 1), parse("u12 + u22 + u32"), -u(2, 3)],
        [-u(3, 1), -u(3, 2), parse("u13 + u23 + u33")],
    ])


@pytest.fixture
def upper_matrix() -> Matrix:
    """Upper-triangular example matrix, symbolic."""
    return Matrix.from_rows([
        [u(1, 1), -u(1, 2), -u(1, 3)],
        [ZERO, parse("u12 + u22"), -u(2, 3)],
        [ZERO, ZERO, parse("u13 + u23 + u33")],
    ])


@pytest.fixture
def full(full_matrix) -> Digraph:
    return matrix_to_digraph(full_matrix)


@pytest.fixture
def upper(upper_matrix) -> Digraph:
    return matrix_to_digraph(upper_matrix)
