"""Determinants as sums over arborescences of weighted multidigraphs.

The public surface re-exported here covers graph construction, the two
sum-preserving rewrites, the matrix <-> digraph bridge and the two
vertex-isolation factorings.
"""

from .arborescence import (Arborescence, arborescence_sum, arborescence_weight,
                           count_arborescences, enumerate_arborescences)
from .errors import GraphError
from .graph import ROOT, Arc, Digraph, SccPartition
from .isolation import (Factorization, Leaf, isolate_vertex, ordered_bell,
                        partitioned_factor, root_split, rooted_subset_count,
                        sequential_factor)
from .matrix import (Matrix, assemble, det_reference, det_via_arborescences,
                     digraph_to_matrix, matrix_to_digraph, symbolic_u,
                     u_decomposition)
from .symbolic import (Expr, canonical_polynomial, equivalent, evaluate, parse,
                       render)
from .transforms import combine_all_parallel, combine_arcs, move_all_to_root, move_arc

__all__ = [
    "ROOT", "Arc", "Arborescence", "Digraph", "Expr", "Factorization", "GraphError",
    "Leaf", "Matrix", "SccPartition", "arborescence_sum", "arborescence_weight",
    "assemble", "canonical_polynomial", "combine_all_parallel", "combine_arcs",
    "count_arborescences", "det_reference", "det_via_arborescences",
    "digraph_to_matrix", "enumerate_arborescences", "equivalent", "evaluate",
    "isolate_vertex", "matrix_to_digraph", "move_all_to_root", "move_arc",
    "ordered_bell", "parse", "partitioned_factor", "render", "root_split",
    "rooted_subset_count", "sequential_factor", "symbolic_u", "u_decomposition",
]
