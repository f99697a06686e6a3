"""Cycle-cover dynamic programming over nice tree decompositions.

A partial solution below a node is a set of chosen arcs in which every
vertex has in- and out-degree at most 1, i.e. disjoint directed paths plus
closed cycles.  Path endpoints still lack a degree, so they can never have
been forgotten; the state therefore only records, for each bag vertex,

* ``SAT``    in- and out-degree both used,
* ``START``  first vertex of a path of length >= 1 (in-degree free),
* ``s >= 1`` last vertex of a path that starts at bag vertex ``s``
  (``s == v`` is the untouched one-vertex path).

States are tuples of ``(vertex, code)`` sorted by vertex.  Each state maps
to a ring value summing the weights of all matching partial solutions; a
``close`` hook is applied once per cycle completed, which is how the sign
``(-1)**cycles`` or a cycle-counting variable enters.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Union

from .decomposition import (
    FORGET,
    INTRODUCE_EDGE,
    INTRODUCE_VERTEX,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    TreeDecomposition,
    heuristic_tree_decomposition,
    make_nice,
    validate_tree_decomposition,
)
from .errors import DecompositionError, InvalidDecomposition, WidthLimitExceeded
from .graphs import DirectedMultigraph, SquareIntMatrix, support_digraph
from .polynomial import IntPolynomial

DEFAULT_MAX_WIDTH = 10

SAT = -1
START = 0

Decomposition = Union[TreeDecomposition, NiceTreeDecomposition, None]


@dataclass(frozen=True)
class CycleCoverHistogram:
    """``counts[k]`` is the (weighted) number of cycle covers with k cycles.

    Zero entries are omitted.  The empty graph has the single empty cover,
    recorded as ``{0: 1}``.
    """

    n: int
    counts: dict[int, int] = field(default_factory=dict)

    def __getitem__(self, k: int) -> int:
        return self.counts.get(k, 0)

    def signed_sum(self) -> int:
        """Sum of ``(-1)**(n+k) * counts[k]``; the determinant for weighted input."""
        return sum((-1) ** ((self.n + k) % 2) * c for k, c in self.counts.items())

    def total(self) -> int:
        return sum(self.counts.values())

    def as_list(self) -> list[int]:
        """Dense ``[counts[1], ..., counts[n]]``."""
        return [self[k] for k in range(1, self.n + 1)]


@dataclass(frozen=True)
class _Ring:
    zero: object
    one: object
    close: Callable


_SIGNED_INT = _Ring(0, 1, lambda x: -x)
_SIGNED_POLY = _Ring(IntPolynomial(), IntPolynomial.constant(1), lambda p: -p)
_CYCLE_COUNTING = _Ring(IntPolynomial(), IntPolynomial.constant(1), lambda p: p.shift(1))


def _degrees(v: int, code: int) -> tuple[int, int]:
    if code == SAT:
        return 1, 1
    if code == START:
        return 0, 1
    return (0 if code == v else 1), 0


def _introduce_edge(table, u, v, w, ring):
    out = defaultdict(lambda: ring.zero)
    for state, val in table.items():
        out[state] = out[state] + val
        d = dict(state)
        cu, cv = d[u], d[v]
        if u == v:
            if cu != u:
                continue
            d[u] = SAT
            out[tuple(sorted(d.items()))] += ring.close(val * w)
            continue
        if cu < 1 or not (cv == START or cv == v):
            continue
        su = cu
        if su == v:
            d[u] = SAT
            d[v] = SAT
            out[tuple(sorted(d.items()))] += ring.close(val * w)
            continue
        d[u] = START if su == u else SAT
        if cv == v:
            d[v] = su
        else:
            end_v = next(x for x, c in state if c == v and x != v)
            d[v] = SAT
            d[end_v] = su
        out[tuple(sorted(d.items()))] += val * w
    return out


def _masks(state):
    in_mask = out_mask = 0
    for i, (v, code) in enumerate(state):
        di, do = _degrees(v, code)
        in_mask |= di << i
        out_mask |= do << i
    return in_mask, out_mask


def _merge(s1, s2):
    """Combine two compatible states; return (state, cycles_closed)."""
    succ = {}
    for state in (s1, s2):
        for v, code in state:
            if code >= 1 and code != v:
                succ[code] = v
    pred = {b: a for a, b in succ.items()}
    cycles = 0
    seen = set()
    for start in succ:
        if start in seen or start not in pred:
            continue
        x = start
        while x in succ and x not in seen:
            seen.add(x)
            x = succ[x]
        if x == start:
            cycles += 1
    merged = []
    for (v, c1), (_, c2) in zip(s1, s2):
        i1, o1 = _degrees(v, c1)
        i2, o2 = _degrees(v, c2)
        din, dout = i1 + i2, o1 + o2
        if dout:
            merged.append((v, SAT if din else START))
        else:
            x = v
            while x in pred:
                x = pred[x]
            merged.append((v, x))
    return tuple(merged), cycles


def _join(left, right, ring):
    groups = defaultdict(list)
    for state, val in right.items():
        groups[_masks(state)].append((state, val))
    out = defaultdict(lambda: ring.zero)
    for s1, v1 in left.items():
        in1, out1 = _masks(s1)
        for (in2, out2), items in groups.items():
            if in1 & in2 or out1 & out2:
                continue
            for s2, v2 in items:
                state, cycles = _merge(s1, s2)
                val = v1 * v2
                for _ in range(cycles):
                    val = ring.close(val)
                out[state] += val
    return out


def run_cycle_cover_dp(nt: NiceTreeDecomposition, weight: Callable, ring: _Ring):
    """Sum over all cycle covers of the product of arc weights, closed per cycle."""
    tables: dict[int, dict] = {}
    for idx, node in enumerate(nt.nodes):
        kind = node.kind
        if kind == LEAF:
            table = {(): ring.one}
        elif kind == INTRODUCE_VERTEX:
            child = tables.pop(node.children[0])
            v = node.vertex
            table = {tuple(sorted(s + ((v, v),))): val for s, val in child.items()}
        elif kind == INTRODUCE_EDGE:
            u, v = node.edge
            table = _introduce_edge(tables.pop(node.children[0]), u, v, weight(u, v), ring)
        elif kind == FORGET:
            v = node.vertex
            table = {}
            for s, val in tables.pop(node.children[0]).items():
                if dict(s)[v] == SAT:
                    key = tuple(p for p in s if p[0] != v)
                    table[key] = table.get(key, ring.zero) + val
        elif kind == JOIN:
            a, b = node.children
            table = _join(tables.pop(a), tables.pop(b), ring)
        else:
            raise InvalidDecomposition(f"unknown node kind {kind!r}")
        tables[idx] = {s: v for s, v in table.items() if v != ring.zero}
    return tables[nt.root].get((), ring.zero)


def check_nice(g: DirectedMultigraph, nt: NiceTreeDecomposition) -> int:
    """Structural check of a nice decomposition against ``g``; returns the width."""
    forgotten = []
    for idx, node in enumerate(nt.nodes):
        if any(not (0 <= c < idx) for c in node.children):
            raise InvalidDecomposition(f"node {idx} is not in post-order")
        kids = [nt.nodes[c] for c in node.children]
        kind = node.kind
        ok = True
        if kind == LEAF:
            ok = not kids and not node.bag
        elif kind == INTRODUCE_VERTEX:
            ok = len(kids) == 1 and node.vertex not in kids[0].bag and node.bag == kids[0].bag | {node.vertex}
        elif kind == INTRODUCE_EDGE:
            ok = len(kids) == 1 and node.bag == kids[0].bag and set(node.edge) <= node.bag
        elif kind == FORGET:
            ok = len(kids) == 1 and node.vertex in kids[0].bag and node.bag == kids[0].bag - {node.vertex}
            forgotten.append(node.vertex)
        elif kind == JOIN:
            ok = len(kids) == 2 and kids[0].bag == node.bag == kids[1].bag
        else:
            ok = False
        if not ok:
            raise InvalidDecomposition(f"node {idx} ({kind}) is malformed")
    if not nt.nodes or nt.nodes[-1].bag:
        raise InvalidDecomposition("root bag must be empty")
    if sorted(forgotten) != list(g.vertices):
        raise InvalidDecomposition("every vertex must be forgotten exactly once")
    if nt.introduced_edges() != g.multiplicities():
        raise InvalidDecomposition("introduced edges do not match the graph's arcs")
    try:
        validate_tree_decomposition(g, nt.to_tree_decomposition())
    except DecompositionError as err:
        raise InvalidDecomposition(f"{type(err).__name__}: {err}") from err
    return nt.width


def nice_for(g: DirectedMultigraph, td: Decomposition = None, max_width: int = DEFAULT_MAX_WIDTH):
    """Nice decomposition for ``g`` from a plain one, a nice one, or the heuristic."""
    if isinstance(td, NiceTreeDecomposition):
        width = check_nice(g, td)
        nt = td
    else:
        if td is None:
            td = heuristic_tree_decomposition(g)
        nt = make_nice(g, td)
        width = nt.width
    if width > max_width:
        raise WidthLimitExceeded(width, max_width)
    return nt


def _plain(td: Decomposition):
    if isinstance(td, NiceTreeDecomposition):
        return td.to_tree_decomposition()
    return td


def cycle_cover_histogram(
    d: DirectedMultigraph, nt: Decomposition = None, max_width: int = DEFAULT_MAX_WIDTH
) -> CycleCoverHistogram:
    """Number of cycle covers of ``d`` by number of cycles (parallel arcs are distinct)."""
    if d.vertex_count == 0:
        return CycleCoverHistogram(0, {0: 1})
    nice = nice_for(d, nt, max_width)
    one = IntPolynomial.constant(1)
    poly = run_cycle_cover_dp(nice, lambda u, v: one, _CYCLE_COUNTING)
    return CycleCoverHistogram(d.vertex_count, {k: c for k, c in enumerate(poly.coeffs) if c})


def weighted_cycle_cover_histogram(
    m: SquareIntMatrix, nt: Decomposition = None, max_width: int = DEFAULT_MAX_WIDTH
) -> CycleCoverHistogram:
    """Cycle covers of the support of ``m``, weighted by the product of entries."""
    if m.n == 0:
        return CycleCoverHistogram(0, {0: 1})
    d = support_digraph(m)
    nice = nice_for(d, nt, max_width)
    poly = run_cycle_cover_dp(
        nice, lambda u, v: IntPolynomial.constant(m.rows[u - 1][v - 1]), _CYCLE_COUNTING
    )
    return CycleCoverHistogram(m.n, {k: c for k, c in enumerate(poly.coeffs) if c})


def determinant(m: SquareIntMatrix, nt: Decomposition = None, max_width: int = DEFAULT_MAX_WIDTH) -> int:
    """Exact determinant as the signed, weighted sum of cycle covers.

    ``nt`` may be a decomposition of the support digraph (plain or nice);
    without one the min-fill heuristic is used.
    """
    if m.n == 0:
        return 1
    d = support_digraph(m)
    nice = nice_for(d, nt, max_width)
    total = run_cycle_cover_dp(nice, lambda u, v: m.rows[u - 1][v - 1], _SIGNED_INT)
    return total if m.n % 2 == 0 else -total


def _with_all_loops(m: SquareIntMatrix) -> DirectedMultigraph:
    arcs = [(i + 1, j + 1) for i in range(m.n) for j in range(m.n) if i == j or m.rows[i][j] != 0]
    return DirectedMultigraph(m.n, arcs)


def characteristic_polynomial(
    m: SquareIntMatrix, nt: Decomposition = None, max_width: int = DEFAULT_MAX_WIDTH
) -> IntPolynomial:
    """``det(xI - A)`` via the same DP with polynomial arc weights.

    The loop at ``v`` carries ``x - a_vv`` and an off-diagonal arc ``-a_uv``.
    A nice decomposition passed in must introduce every diagonal loop.
    """
    if m.n == 0:
        return IntPolynomial.constant(1)
    d = _with_all_loops(m)
    nice = nice_for(d, nt, max_width)

    def weight(u, v):
        a = m.rows[u - 1][v - 1]
        return IntPolynomial((-a, 1)) if u == v else IntPolynomial.constant(-a)

    total = run_cycle_cover_dp(nice, weight, _SIGNED_POLY)
    return total if m.n % 2 == 0 else -total


def support_decomposition(m: SquareIntMatrix, td: Decomposition = None) -> TreeDecomposition:
    """Plain decomposition of the support of ``m`` (heuristic when ``td`` is None)."""
    td = _plain(td)
    return heuristic_tree_decomposition(support_digraph(m)) if td is None else td
