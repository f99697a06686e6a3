"""Exact counting on bounded-treewidth matrices and graphs.

Determinants, characteristic polynomials and traces of powers come from a
cycle-cover dynamic program over nice tree decompositions; spanning trees,
arborescences and Euler tours reduce to Laplacian determinants.
"""

from .algebra import power_sums_from_charpoly, trace_power
from .ccdp import (
    CycleCoverHistogram,
    characteristic_polynomial,
    cycle_cover_histogram,
    determinant,
    weighted_cycle_cover_histogram,
)
from .counting import (
    Orientation,
    count_arborescences,
    count_directed_euler_tours,
    count_spanning_trees,
    count_undirected_euler_tours,
    enumerate_eulerian_orientations,
)
from .decomposition import (
    NiceTreeDecomposition,
    TreeDecomposition,
    heuristic_tree_decomposition,
    make_nice,
    validate_tree_decomposition,
)
from .graphs import (
    DirectedMultigraph,
    SquareIntMatrix,
    UndirectedMultigraph,
    degree_pad,
    laplacian,
    ord_gadget,
    subdivide,
    support_digraph,
)
from .polynomial import IntPolynomial

__all__ = [
    "CycleCoverHistogram",
    "DirectedMultigraph",
    "IntPolynomial",
    "NiceTreeDecomposition",
    "Orientation",
    "SquareIntMatrix",
    "TreeDecomposition",
    "UndirectedMultigraph",
    "characteristic_polynomial",
    "count_arborescences",
    "count_directed_euler_tours",
    "count_spanning_trees",
    "count_undirected_euler_tours",
    "cycle_cover_histogram",
    "degree_pad",
    "determinant",
    "enumerate_eulerian_orientations",
    "heuristic_tree_decomposition",
    "laplacian",
    "make_nice",
    "ord_gadget",
    "power_sums_from_charpoly",
    "subdivide",
    "support_digraph",
    "trace_power",
    "validate_tree_decomposition",
    "weighted_cycle_cover_histogram",
]
