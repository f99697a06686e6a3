"""Tree decompositions: validation, a min-fill heuristic and nice normal form."""

from __future__ import annotations

from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    ConnectivityViolated,
    DecompositionError,
    EdgeUncovered,
    InvalidDecomposition,
    NotATree,
    VertexUncovered,
)
from .graphs import DirectedMultigraph, UndirectedMultigraph, neighbour_sets

Graph = Union[DirectedMultigraph, UndirectedMultigraph]

LEAF = "leaf"
INTRODUCE_VERTEX = "introduce_vertex"
INTRODUCE_EDGE = "introduce_edge"
FORGET = "forget"
JOIN = "join"


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed from 0; ``tree_edges`` are pairs of bag indices."""

    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    def __init__(self, bags: Iterable[Iterable[int]], tree_edges: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))
        object.__setattr__(self, "tree_edges", tuple((int(i), int(j)) for i, j in tree_edges))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def relabel(self, mapping: Mapping[int, int]) -> "TreeDecomposition":
        """Rename vertices by ``mapping``; vertices missing from it are dropped.

        Dropping vertices keeps the decomposition valid for the induced subgraph.
        """
        return TreeDecomposition(
            ({mapping[v] for v in b if v in mapping} for b in self.bags), self.tree_edges
        )

    def without_vertex(self, v: int) -> "TreeDecomposition":
        """Decomposition of ``G - v`` with vertices above ``v`` shifted down by one."""
        mapping = {u: (u if u < v else u - 1) for b in self.bags for u in b if u != v}
        return self.relabel(mapping)


def _graph_pairs(g: Graph) -> tuple[tuple[int, int], ...]:
    return g.arcs if isinstance(g, DirectedMultigraph) else g.edges


def _tree_adjacency(t: TreeDecomposition) -> list[list[int]]:
    k = len(t.bags)
    adj = [[] for _ in range(k)]
    for i, j in t.tree_edges:
        if not (0 <= i < k and 0 <= j < k):
            raise InvalidDecomposition(f"tree edge ({i},{j}) refers to a missing bag")
        if i == j:
            raise NotATree(f"tree edge ({i},{j}) is a loop")
        adj[i].append(j)
        adj[j].append(i)
    return adj


def _check_tree(t: TreeDecomposition) -> list[list[int]]:
    adj = _tree_adjacency(t)
    k = len(t.bags)
    if k == 0:
        return adj
    if len(t.tree_edges) != k - 1:
        raise NotATree(f"{k} bags need {k - 1} tree edges, got {len(t.tree_edges)}")
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != k:
        raise NotATree("bag tree is disconnected")
    return adj


def validate_tree_decomposition(g: Graph, t: TreeDecomposition) -> int:
    """Check the three tree-decomposition conditions and return the width."""
    adj = _check_tree(t)
    n = g.vertex_count
    occurrences = defaultdict(list)
    for i, bag in enumerate(t.bags):
        for v in bag:
            if not (1 <= v <= n):
                raise InvalidDecomposition(f"bag {i} contains vertex {v} outside 1..{n}")
            occurrences[v].append(i)
    for v in range(1, n + 1):
        if not occurrences[v]:
            raise VertexUncovered(v)
    seen_pairs = set()
    for u, v in _graph_pairs(g):
        key = (min(u, v), max(u, v))
        if u == v or key in seen_pairs:
            continue
        seen_pairs.add(key)
        if not any(u in b and v in b for b in t.bags):
            raise EdgeUncovered(key)
    for v in range(1, n + 1):
        holders = set(occurrences[v])
        start = occurrences[v][0]
        reach = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in adj[i]:
                if j in holders and j not in reach:
                    reach.add(j)
                    stack.append(j)
        if reach != holders:
            raise ConnectivityViolated(v)
    return t.width


def heuristic_tree_decomposition(g: Graph) -> TreeDecomposition:
    """Min-fill elimination, ties broken by the smallest vertex id.

    Bag of an eliminated vertex is the vertex plus its neighbours at
    elimination time; it hangs below the bag of the earliest-eliminated of
    those neighbours.  Components are chained together through their root
    bags, which share no vertices.
    """
    n = g.vertex_count
    adj = neighbour_sets(g)
    remaining = set(range(1, n + 1))
    order: list[int] = []
    higher: dict[int, frozenset[int]] = {}

    def fill(v: int) -> int:
        nb = sorted(adj[v])
        missing = 0
        for i, a in enumerate(nb):
            adj_a = adj[a]
            for b in nb[i + 1 :]:
                if b not in adj_a:
                    missing += 1
        return missing

    while remaining:
        v = min(remaining, key=lambda u: (fill(u), u))
        nb = adj[v]
        for a in nb:
            adj[a].update(nb)
            adj[a].discard(a)
            adj[a].discard(v)
        higher[v] = frozenset(nb)
        order.append(v)
        remaining.discard(v)
        adj[v] = set()

    position = {v: i for i, v in enumerate(order)}
    bags = [frozenset({v}) | higher[v] for v in order]
    edges = []
    roots = []
    for i, v in enumerate(order):
        if higher[v]:
            parent = min(higher[v], key=position.__getitem__)
            edges.append((i, position[parent]))
        else:
            roots.append(i)
    for r1, r2 in zip(roots, roots[1:]):
        edges.append((r1, r2))
    return TreeDecomposition(bags, edges)


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset[int]
    children: tuple[int, ...] = ()
    vertex: int | None = None
    edge: tuple[int, int] | None = None


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nodes in post-order: every child index is smaller than its parent's.

    The last node is the root.  ``edge`` on an introduce-edge node is the
    arc/edge as stored in the source graph; every occurrence of a graph
    arc/edge (multiplicity included) has exactly one such node.
    """

    nodes: tuple[NiceNode, ...]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1

    def kind_counts(self) -> Counter:
        return Counter(nd.kind for nd in self.nodes)

    def introduced_edges(self) -> Counter:
        return Counter(nd.edge for nd in self.nodes if nd.kind == INTRODUCE_EDGE)

    def to_tree_decomposition(self) -> TreeDecomposition:
        edges = [(c, i) for i, nd in enumerate(self.nodes) for c in nd.children]
        return TreeDecomposition([nd.bag for nd in self.nodes], edges)


def make_nice(g: Graph, t: TreeDecomposition, root: int = 0) -> NiceTreeDecomposition:
    """Convert a valid decomposition of ``g`` into nice form.

    Every arc/edge is introduced immediately before the first of its
    endpoints is forgotten; at that point the other endpoint is still in the
    bag, which is what the cycle-cover DP relies on.
    """
    try:
        validate_tree_decomposition(g, t)
    except DecompositionError as err:
        raise InvalidDecomposition(f"{type(err).__name__}: {err}") from err

    pairs = _graph_pairs(g)
    incident = defaultdict(list)
    for idx, (u, v) in enumerate(pairs):
        incident[u].append(idx)
        if v != u:
            incident[v].append(idx)
    introduced = [False] * len(pairs)
    nodes: list[NiceNode] = []

    def emit(node: NiceNode) -> int:
        nodes.append(node)
        return len(nodes) - 1

    def forget(top: int, bag: frozenset[int], v: int) -> tuple[int, frozenset[int]]:
        for idx in incident[v]:
            if introduced[idx]:
                continue
            a, b = pairs[idx]
            if a in bag and b in bag:
                introduced[idx] = True
                top = emit(NiceNode(INTRODUCE_EDGE, bag, (top,), edge=(a, b)))
        bag = bag - {v}
        return emit(NiceNode(FORGET, bag, (top,), vertex=v)), bag

    def introduce(top: int, bag: frozenset[int], v: int) -> tuple[int, frozenset[int]]:
        bag = bag | {v}
        return emit(NiceNode(INTRODUCE_VERTEX, bag, (top,), vertex=v)), bag

    if not t.bags:
        emit(NiceNode(LEAF, frozenset()))
        return NiceTreeDecomposition(tuple(nodes))

    adj = _tree_adjacency(t)
    parent = {root: None}
    bfs = [root]
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for j in adj[i]:
            if j not in parent:
                parent[j] = i
                bfs.append(j)
                queue.append(j)
    children = defaultdict(list)
    for i in bfs[1:]:
        children[parent[i]].append(i)

    top_of: dict[int, int] = {}
    for i in reversed(bfs):
        target = t.bags[i]
        branches = []
        if not children[i]:
            top, bag = emit(NiceNode(LEAF, frozenset())), frozenset()
            for v in sorted(target):
                top, bag = introduce(top, bag, v)
            branches.append(top)
        for c in sorted(children[i]):
            top, bag = top_of.pop(c), t.bags[c]
            for v in sorted(bag - target):
                top, bag = forget(top, bag, v)
            for v in sorted(target - bag):
                top, bag = introduce(top, bag, v)
            branches.append(top)
        top = branches[0]
        for other in branches[1:]:
            top = emit(NiceNode(JOIN, target, (top, other)))
        top_of[i] = top

    top, bag = top_of.pop(root), t.bags[root]
    for v in sorted(bag):
        top, bag = forget(top, bag, v)
    assert all(introduced), "valid decomposition left an edge unintroduced"
    return NiceTreeDecomposition(tuple(nodes))
