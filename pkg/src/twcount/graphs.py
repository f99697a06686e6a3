"""Integer matrices, multigraphs and the constructions built from them.

Vertices are numbered ``1..vertex_count`` everywhere; matrix row/column
``i - 1`` corresponds to vertex ``i``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GraphError, InvalidEndpoints, OutDegreeExceedsN


@dataclass(frozen=True)
class SquareIntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(a) for a in r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise GraphError(f"matrix is not square: row of length {len(r)} with {n} rows")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def identity(cls, n: int) -> "SquareIntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "SquareIntMatrix":
        return cls([[0] * n for _ in range(n)])

    def transpose(self) -> "SquareIntMatrix":
        return SquareIntMatrix(zip(*self.rows)) if self.n else self

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def minor(self, i: int, j: int | None = None) -> "SquareIntMatrix":
        """Delete row ``i`` and column ``j`` (0-based; ``j`` defaults to ``i``)."""
        if j is None:
            j = i
        return SquareIntMatrix(
            [c for cj, c in enumerate(r) if cj != j] for ri, r in enumerate(self.rows) if ri != i
        )

    def permuted(self, perm: Sequence[int]) -> "SquareIntMatrix":
        """Relabel: new[i][j] = old[perm[i]][perm[j]] (0-based)."""
        return SquareIntMatrix([[self.rows[pi][pj] for pj in perm] for pi in perm])


def _check_range(n: int, pairs, what: str) -> None:
    for u, v in pairs:
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphError(f"{what} ({u},{v}) has an endpoint outside 1..{n}")


@dataclass(frozen=True)
class DirectedMultigraph:
    """Arcs are kept in input order; repeats encode multiplicity."""

    vertex_count: int
    arcs: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        arcs = tuple((int(u), int(v)) for u, v in self.arcs)
        if self.vertex_count < 0:
            raise GraphError("negative vertex count")
        _check_range(self.vertex_count, arcs, "arc")
        object.__setattr__(self, "arcs", arcs)

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def multiplicities(self) -> Counter:
        return Counter(self.arcs)

    def out_degree(self, v: int, loops: bool = True) -> int:
        return sum(1 for a, b in self.arcs if a == v and (loops or a != b))

    def in_degree(self, v: int, loops: bool = True) -> int:
        return sum(1 for a, b in self.arcs if b == v and (loops or a != b))

    def underlying(self) -> "UndirectedMultigraph":
        """Underlying undirected multigraph, self-loops dropped."""
        return UndirectedMultigraph(self.vertex_count, [(u, v) for u, v in self.arcs if u != v])

    def adjacency_matrix(self) -> SquareIntMatrix:
        a = [[0] * self.vertex_count for _ in range(self.vertex_count)]
        for u, v in self.arcs:
            a[u - 1][v - 1] += 1
        return SquareIntMatrix(a)

    def reversed(self) -> "DirectedMultigraph":
        return DirectedMultigraph(self.vertex_count, [(v, u) for u, v in self.arcs])


@dataclass(frozen=True)
class UndirectedMultigraph:
    """Edges keep their input orientation, which fixes direction bit 0."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        if self.vertex_count < 0:
            raise GraphError("negative vertex count")
        _check_range(self.vertex_count, edges, "edge")
        object.__setattr__(self, "edges", edges)

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * (self.vertex_count + 1)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg[1:]

    def has_self_loops(self) -> bool:
        return any(a == b for a, b in self.edges)

    def underlying(self) -> "UndirectedMultigraph":
        return UndirectedMultigraph(self.vertex_count, [(u, v) for u, v in self.edges if u != v])

    def bidirected(self) -> DirectedMultigraph:
        """Each edge becomes two antiparallel arcs."""
        arcs = []
        for u, v in self.edges:
            if u != v:
                arcs.append((u, v))
                arcs.append((v, u))
        return DirectedMultigraph(self.vertex_count, arcs)

    def oriented(self, bits: Sequence[int]) -> DirectedMultigraph:
        """Bit 0 keeps the stored direction of an edge, bit 1 reverses it."""
        if len(bits) != len(self.edges):
            raise GraphError("need one direction bit per edge")
        return DirectedMultigraph(
            self.vertex_count, [(v, u) if b else (u, v) for (u, v), b in zip(self.edges, bits)]
        )


def neighbour_sets(g) -> list[set[int]]:
    """Simple undirected adjacency (index 0 unused), loops and multiplicity dropped."""
    pairs = g.arcs if isinstance(g, DirectedMultigraph) else g.edges
    adj = [set() for _ in range(g.vertex_count + 1)]
    for u, v in pairs:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def is_edge_connected(g) -> bool:
    """True when all non-loop edges/arcs lie in one component (isolated vertices ignored)."""
    pairs = g.arcs if isinstance(g, DirectedMultigraph) else g.edges
    touched = {x for e in pairs for x in e}
    if not touched:
        return True
    adj = neighbour_sets(g)
    start = min(touched)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return touched <= seen


# --- constructions -------------------------------------------------------


def support_digraph(m: SquareIntMatrix) -> DirectedMultigraph:
    arcs = [(i + 1, j + 1) for i in range(m.n) for j in range(m.n) if m.rows[i][j] != 0]
    return DirectedMultigraph(m.n, arcs)


def laplacian(d: DirectedMultigraph) -> SquareIntMatrix:
    """Out-degree Laplacian ``D - A``; self-loops contribute to neither term."""
    n = d.vertex_count
    lap = [[0] * n for _ in range(n)]
    for u, v in d.arcs:
        if u == v:
            continue
        lap[u - 1][u - 1] += 1
        lap[u - 1][v - 1] -= 1
    return SquareIntMatrix(lap)


def subdivide(g: UndirectedMultigraph) -> UndirectedMultigraph:
    """Replace edge number ``i`` by a path through new vertex ``|V| + 1 + i``."""
    n = g.vertex_count
    edges = []
    for i, (u, v) in enumerate(g.edges):
        mid = n + 1 + i
        edges.append((u, mid))
        edges.append((mid, v))
    return UndirectedMultigraph(n + len(g.edges), edges)


def degree_pad(d: DirectedMultigraph) -> DirectedMultigraph:
    """Give every original vertex out-degree ``n`` using pendant 2-cycles.

    Vertex ``v`` with ``od(v)`` non-loop out-arcs gets ``n - od(v)`` new
    partners ``w`` with arcs ``w -> v`` and ``v -> w``.  New vertices are
    numbered consecutively, grouped by ``v`` in increasing order.
    """
    n = d.vertex_count
    arcs = list(d.arcs)
    nxt = n + 1
    for v in d.vertices:
        od = d.out_degree(v, loops=False)
        if od > n:
            raise OutDegreeExceedsN(f"vertex {v} has out-degree {od} > {n}")
        for _ in range(n - od):
            arcs.append((nxt, v))
            arcs.append((v, nxt))
            nxt += 1
    return DirectedMultigraph(nxt - 1, arcs)


def ord_gadget(n: int, s: int, t: int, literal: bool = False) -> DirectedMultigraph:
    """Determinant gadget for order on the directed path ``1 -> 2 -> ... -> n``.

    With ``a = 1``, ``b = n``, ``s' = s - 1`` and ``t' = t + 1`` both forms
    drop the path arcs ``s' -> s`` and ``t -> t'``.

    ``literal=True`` then adds ``a -> s'``, ``s' -> t``, ``t -> s``,
    ``s -> a`` and ``b -> t'`` verbatim.  That arc set does not separate the
    two orders (its determinant is nonzero for some ``s < t`` and zero for
    every ``t < s`` tried), so it is kept only for comparison.

    The default form adds ``s' -> b``, ``t -> s``, ``s -> a``, ``b -> t'``
    and a self-loop on every path vertex outside ``{a, s', s, t, t', b}``.
    If ``s`` precedes ``t`` the in-arc of ``t`` forces the chain ``s -> ... -> t``,
    which collides with ``s -> a`` being the only in-arc of ``a``, so there
    is no cycle cover and the determinant is 0.  If ``t`` precedes ``s``
    the unique cover is the cycles ``a..t, s`` and ``t'..s', b`` plus loops on
    ``s+1..n-1``, giving determinant +-1.
    """
    if n < 4 or s == t or not (2 <= s <= n - 1) or not (2 <= t <= n - 1):
        raise InvalidEndpoints(f"need distinct s, t in 2..{n - 1} (got n={n}, s={s}, t={t})")
    a, b, sp, tp = 1, n, s - 1, t + 1
    arcs = {(i, i + 1) for i in range(1, n)}
    arcs -= {(sp, s), (t, tp)}
    if literal:
        arcs |= {(a, sp), (sp, t), (t, s), (s, a), (b, tp)}
    else:
        arcs |= {(sp, b), (t, s), (s, a), (b, tp)}
        special = {a, sp, s, t, tp, b}
        arcs |= {(v, v) for v in range(1, n + 1) if v not in special}
    return DirectedMultigraph(n, sorted(arcs))


# --- small named graphs used by tests and the CLI -------------------------


def path_graph(n: int) -> UndirectedMultigraph:
    return UndirectedMultigraph(n, [(i, i + 1) for i in range(1, n)])


def cycle_graph(n: int) -> UndirectedMultigraph:
    return UndirectedMultigraph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_graph(n: int) -> UndirectedMultigraph:
    return UndirectedMultigraph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def bowtie() -> UndirectedMultigraph:
    """Two triangles sharing vertex 1."""
    return UndirectedMultigraph(5, [(1, 2), (2, 3), (3, 1), (1, 4), (4, 5), (5, 1)])


def directed_cycle(n: int) -> DirectedMultigraph:
    return DirectedMultigraph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def complete_bidirected(n: int) -> DirectedMultigraph:
    return complete_graph(n).bidirected()
