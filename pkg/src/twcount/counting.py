"""Arborescences, spanning trees and Euler tours via Laplacian determinants."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterator

from .ccdp import DEFAULT_MAX_WIDTH, Decomposition, determinant
from .decomposition import NiceTreeDecomposition, TreeDecomposition, heuristic_tree_decomposition
from .errors import EdgeLimitExceeded, GraphError, SelfLoopUnsupported, TwCountError
from .graphs import DirectedMultigraph, UndirectedMultigraph, is_edge_connected, laplacian

DEFAULT_MAX_EDGES = 30


def _plain_decomposition(g, td: Decomposition) -> TreeDecomposition:
    if isinstance(td, NiceTreeDecomposition):
        return td.to_tree_decomposition()
    return heuristic_tree_decomposition(g) if td is None else td


def count_arborescences(
    d: DirectedMultigraph, root: int, nt: Decomposition = None, max_width: int = DEFAULT_MAX_WIDTH
) -> int:
    """Spanning arborescences oriented toward ``root``.

    The ``(root, root)`` cofactor of the out-degree Laplacian.  ``nt`` is a
    decomposition of ``d`` (or its underlying graph); dropping ``root`` from
    it gives one for the reduced Laplacian.
    """
    if not (1 <= root <= d.vertex_count):
        raise GraphError(f"root {root} outside 1..{d.vertex_count}")
    if d.vertex_count == 1:
        return 1
    reduced = laplacian(d).minor(root - 1)
    td = _plain_decomposition(d, nt).without_vertex(root)
    return determinant(reduced, td, max_width)


def count_spanning_trees(
    g: UndirectedMultigraph, nt: Decomposition = None, max_width: int = DEFAULT_MAX_WIDTH, root: int = 1
) -> int:
    """Kirchhoff count: arborescences of the bidirected graph at any root."""
    if g.vertex_count == 0:
        return 0
    return count_arborescences(g.bidirected(), root, nt, max_width)


def _nontrivial_part(d: DirectedMultigraph, td: Decomposition):
    """Restrict ``d`` (and ``td``) to vertices touched by some arc."""
    touched = sorted({x for arc in d.arcs for x in arc})
    mapping = {v: i for i, v in enumerate(touched, start=1)}
    sub = DirectedMultigraph(len(touched), [(mapping[u], mapping[v]) for u, v in d.arcs])
    sub_td = None if td is None else _plain_decomposition(d, td).relabel(mapping)
    return sub, sub_td


def is_eulerian_digraph(d: DirectedMultigraph) -> bool:
    return (
        bool(d.arcs)
        and all(d.in_degree(v) == d.out_degree(v) for v in d.vertices)
        and is_edge_connected(d)
    )


def count_directed_euler_tours(
    d: DirectedMultigraph, nt: Decomposition = None, max_width: int = DEFAULT_MAX_WIDTH
) -> int:
    """BEST theorem: ``t(K) * prod (deg(v) - 1)!`` over vertices with arcs.

    Counts circuits up to rotation with parallel arcs distinguished.  Returns
    0 for graphs that are unbalanced, split into several arc components, or
    have no arcs at all.
    """
    if not is_eulerian_digraph(d):
        return 0
    sub, sub_td = _nontrivial_part(d, nt)
    tours = count_arborescences(sub, 1, sub_td, max_width)
    for v in sub.vertices:
        tours *= factorial(sub.out_degree(v) - 1)
    return tours


@dataclass(frozen=True)
class Orientation:
    """``bits[i] == 0`` keeps edge ``i`` as stored, ``1`` reverses it."""

    bits: tuple[int, ...]

    def reversed(self) -> "Orientation":
        return Orientation(tuple(1 - b for b in self.bits))

    def apply(self, g: UndirectedMultigraph) -> DirectedMultigraph:
        return g.oriented(self.bits)


def enumerate_eulerian_orientations(
    g: UndirectedMultigraph, max_edges: int = DEFAULT_MAX_EDGES
) -> Iterator[Orientation]:
    """Yield every balanced orientation once, in lexicographic order of bits.

    Backtracks edge by edge, pruning as soon as a vertex has used more than
    half its degree in one direction.
    """
    m = len(g.edges)
    if m > max_edges:
        raise EdgeLimitExceeded(m, max_edges)
    if g.has_self_loops():
        raise SelfLoopUnsupported("self-loops have no orientation")
    degrees = [0] + g.degrees()
    if any(x % 2 for x in degrees):
        return
    half = [x // 2 for x in degrees]
    outs = [0] * len(degrees)
    ins = [0] * len(degrees)
    bits = [0] * m
    edges = g.edges

    def place(i):
        if i == m:
            yield Orientation(tuple(bits))
            return
        u, v = edges[i]
        for bit, (a, b) in ((0, (u, v)), (1, (v, u))):
            if outs[a] < half[a] and ins[b] < half[b]:
                outs[a] += 1
                ins[b] += 1
                bits[i] = bit
                yield from place(i + 1)
                outs[a] -= 1
                ins[b] -= 1

    yield from place(0)


def count_undirected_euler_tours(
    g: UndirectedMultigraph,
    nt: Decomposition = None,
    max_width: int = DEFAULT_MAX_WIDTH,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> int:
    """Half the directed tour total over all Eulerian orientations.

    Tours are counted up to rotation and reversal.  The factor
    ``prod (deg(v)/2 - 1)!`` is the same for every orientation, so only the
    arborescence counts are summed.
    """
    if g.has_self_loops():
        raise SelfLoopUnsupported("self-loops have no orientation")
    degrees = g.degrees()
    if not g.edges or any(x % 2 for x in degrees) or not is_edge_connected(g):
        return 0
    if len(g.edges) > max_edges:
        raise EdgeLimitExceeded(len(g.edges), max_edges)
    touched = [v for v in g.vertices if degrees[v - 1]]
    mapping = {v: i for i, v in enumerate(touched, start=1)}
    sub = UndirectedMultigraph(len(touched), [(mapping[u], mapping[v]) for u, v in g.edges])
    td = _plain_decomposition(g, nt).relabel(mapping)
    arborescences = 0
    for orientation in enumerate_eulerian_orientations(sub, max_edges):
        arborescences += count_arborescences(orientation.apply(sub), 1, td, max_width)
    factor = 1
    for v in sub.vertices:
        factor *= factorial(sub.degree(v) // 2 - 1)
    total = arborescences * factor
    if total % 2:
        raise TwCountError("directed tour total is odd; orientation pairing broken")
    return total // 2
