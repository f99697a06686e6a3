"""Brute-force reference computations.

Nothing here touches tree decompositions or the DP engine; these exist to
catch mistakes in those.  Caps keep each call well under a second.
"""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

from .errors import DimensionTooLarge, SelfLoopUnsupported
from .graphs import DirectedMultigraph, SquareIntMatrix, UndirectedMultigraph
from .polynomial import IntPolynomial

MAX_PERMUTATION_N = 8
MAX_CYCLE_COVER_N = 8
MAX_ARBORESCENCE_ARCS = 24
MAX_SPANNING_TREE_EDGES = 20
MAX_EULER_EDGES = 12

CAPS = {
    "det_permutation_expansion.n": MAX_PERMUTATION_N,
    "enumerate_cycle_covers.n": MAX_CYCLE_COVER_N,
    "enumerate_arborescences.arcs": MAX_ARBORESCENCE_ARCS,
    "enumerate_spanning_trees.edges": MAX_SPANNING_TREE_EDGES,
    "enumerate_euler_tours.edges": MAX_EULER_EDGES,
}


def _cycle_count(perm) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for i in range(len(perm)):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return cycles


def det_permutation_expansion(m: SquareIntMatrix) -> int:
    n = m.n
    if n > MAX_PERMUTATION_N:
        raise DimensionTooLarge(n, MAX_PERMUTATION_N)
    rows = m.rows
    total = 0
    for perm in itertools.permutations(range(n)):
        prod = 1
        for i, j in enumerate(perm):
            prod *= rows[i][j]
            if not prod:
                break
        if prod:
            total += prod if (n - _cycle_count(perm)) % 2 == 0 else -prod
    return total


def det_fraction_free(m: SquareIntMatrix) -> int:
    """Bareiss elimination; every division is exact."""
    a = m.to_lists()
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def enumerate_cycle_covers(d: DirectedMultigraph) -> dict[int, int]:
    """Histogram ``{cycles: count}`` over arc subsets with all in/out degrees 1."""
    n = d.vertex_count
    if n > MAX_CYCLE_COVER_N:
        raise DimensionTooLarge(n, MAX_CYCLE_COVER_N)
    if n == 0:
        return {0: 1}
    out_arcs = [[v for (u, v) in d.arcs if u == w] for w in range(1, n + 1)]
    hist = Counter()
    for choice in itertools.product(*out_arcs):
        if len(set(choice)) == n:
            hist[_cycle_count([v - 1 for v in choice])] += 1
    return dict(hist)


def enumerate_arborescences(d: DirectedMultigraph, root: int) -> int:
    """Spanning in-trees toward ``root``: one out-arc per non-root vertex, no cycles."""
    arcs = [(u, v) for u, v in d.arcs if u != v and u != root]
    if len(arcs) > MAX_ARBORESCENCE_ARCS:
        raise DimensionTooLarge(len(arcs), MAX_ARBORESCENCE_ARCS, "arc count")
    others = [v for v in d.vertices if v != root]
    options = [[b for a, b in arcs if a == v] for v in others]
    count = 0
    for choice in itertools.product(*options):
        succ = dict(zip(others, choice))
        if all(_reaches(v, root, succ) for v in others):
            count += 1
    return count


def _reaches(v, root, succ) -> bool:
    steps = 0
    while v != root:
        v = succ[v]
        steps += 1
        if steps > len(succ):
            return False
    return True


def enumerate_spanning_trees(g: UndirectedMultigraph) -> int:
    """Edge subsets of size ``n - 1`` that connect all vertices (loops ignored)."""
    edges = [e for e in g.edges if e[0] != e[1]]
    if len(edges) > MAX_SPANNING_TREE_EDGES:
        raise DimensionTooLarge(len(edges), MAX_SPANNING_TREE_EDGES, "edge count")
    n = g.vertex_count
    if n <= 1:
        return 1
    count = 0
    for subset in itertools.combinations(edges, n - 1):
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        count += ok
    return count


def enumerate_euler_tours(g) -> int:
    """Count Euler circuits by backtracking from an anchored first edge.

    Directed: the lex-least arc goes first, so each rotation class is
    counted once.  Undirected: the lex-least edge goes first, traversed from
    its smaller endpoint, so each rotation-and-reversal class is counted once.
    Parallel edges are distinct.  Graphs without edges have no tour.
    """
    directed = isinstance(g, DirectedMultigraph)
    pairs = list(g.arcs if directed else g.edges)
    if len(pairs) > MAX_EULER_EDGES:
        raise DimensionTooLarge(len(pairs), MAX_EULER_EDGES, "edge count")
    if not pairs:
        return 0
    if not directed and any(u == v for u, v in pairs):
        raise SelfLoopUnsupported("undirected self-loops have no traversal direction")

    incident = [[] for _ in range(g.vertex_count + 1)]
    for idx, (u, v) in enumerate(pairs):
        incident[u].append((idx, v))
        if not directed:
            incident[v].append((idx, u))

    def key(idx):
        u, v = pairs[idx]
        return (u, v, idx) if directed else (min(u, v), max(u, v), idx)

    first = min(range(len(pairs)), key=key)
    u0, v0 = pairs[first]
    if not directed:
        u0, v0 = min(u0, v0), max(u0, v0)
    used = [False] * len(pairs)
    used[first] = True

    def extend(at, remaining):
        if remaining == 0:
            return 1 if at == u0 else 0
        total = 0
        for idx, nxt in incident[at]:
            if not used[idx]:
                used[idx] = True
                total += extend(nxt, remaining - 1)
                used[idx] = False
        return total

    return extend(v0, len(pairs) - 1)


def charpoly_interpolation(m: SquareIntMatrix) -> IntPolynomial:
    """``det(xI - A)`` from its values at ``x = 0..n`` (Lagrange, exact)."""
    n = m.n
    xs = list(range(n + 1))
    ys = []
    for x0 in xs:
        shifted = [[(x0 if i == j else 0) - m.rows[i][j] for j in range(n)] for i in range(n)]
        ys.append(det_fraction_free(SquareIntMatrix(shifted)))
    coeffs = [Fraction(0)] * (n + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    assert all(c.denominator == 1 for c in coeffs)
    return IntPolynomial(int(c) for c in coeffs)


def matrix_power_trace(m: SquareIntMatrix, k: int) -> int:
    n = m.n
    a = m.rows
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(k):
        power = [[sum(power[i][l] * a[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
    return sum(power[i][i] for i in range(n))
