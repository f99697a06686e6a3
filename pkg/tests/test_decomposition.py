import random

import pytest
from hypothesis import given, settings, strategies as st

from twcount.ccdp import check_nice
from twcount.decomposition import (
    FORGET,
    INTRODUCE_EDGE,
    JOIN,
    LEAF,
    TreeDecomposition,
    heuristic_tree_decomposition,
    make_nice,
    validate_tree_decomposition,
)
from twcount.errors import (
    ConnectivityViolated,
    EdgeUncovered,
    InvalidDecomposition,
    NotATree,
    VertexUncovered,
)
from twcount.graphs import (
    DirectedMultigraph,
    UndirectedMultigraph,
    bowtie,
    complete_graph,
    cycle_graph,
    path_graph,
)

from corpus import grid_graph, random_digraphs


def triangle():
    return cycle_graph(3)


class TestValidate:
    def test_path(self):
        assert validate_tree_decomposition(path_graph(3), TreeDecomposition([{1, 2}, {2, 3}], [(0, 1)])) == 1

    def test_triangle_single_bag(self):
        assert validate_tree_decomposition(triangle(), TreeDecomposition([{1, 2, 3}])) == 2

    def test_triangle_missing_edge(self):
        with pytest.raises(EdgeUncovered) as info:
            validate_tree_decomposition(triangle(), TreeDecomposition([{1, 2}, {2, 3}], [(0, 1)]))
        assert info.value.edge == (1, 3)

    def test_vertex_uncovered(self):
        with pytest.raises(VertexUncovered) as info:
            validate_tree_decomposition(UndirectedMultigraph(3, [(1, 2)]), TreeDecomposition([{1, 2}]))
        assert info.value.vertex == 3

    def test_connectivity(self):
        td = TreeDecomposition([{1, 2}, {2, 3}, {1, 3}], [(0, 1), (1, 2)])
        with pytest.raises(ConnectivityViolated) as info:
            validate_tree_decomposition(triangle(), td)
        assert info.value.vertex == 1

    def test_not_a_tree(self):
        with pytest.raises(NotATree):
            validate_tree_decomposition(path_graph(3), TreeDecomposition([{1, 2}, {2, 3}]))
        with pytest.raises(NotATree):
            validate_tree_decomposition(
                path_graph(3), TreeDecomposition([{1, 2}, {2, 3}, {2}], [(0, 1), (1, 0)])
            )

    def test_vertex_out_of_range(self):
        with pytest.raises(InvalidDecomposition):
            validate_tree_decomposition(path_graph(2), TreeDecomposition([{1, 2, 7}]))

    def test_directed_arcs_checked(self):
        d = DirectedMultigraph(3, [(1, 2), (3, 1)])
        with pytest.raises(EdgeUncovered):
            validate_tree_decomposition(d, TreeDecomposition([{1, 2}, {2, 3}], [(0, 1)]))


class TestHeuristic:
    def test_cycle(self):
        assert heuristic_tree_decomposition(cycle_graph(4)).width == 2

    def test_tree(self):
        g = UndirectedMultigraph(5, [(1, 2), (1, 3), (3, 4), (3, 5)])
        assert validate_tree_decomposition(g, heuristic_tree_decomposition(g)) == 1

    def test_k4(self):
        assert heuristic_tree_decomposition(complete_graph(4)).width == 3

    def test_grid(self):
        g = grid_graph(3, 8)
        assert validate_tree_decomposition(g, heuristic_tree_decomposition(g)) == 3

    def test_deterministic(self):
        g = grid_graph(4, 4)
        assert heuristic_tree_decomposition(g) == heuristic_tree_decomposition(g)

    def test_disconnected_and_isolated(self):
        g = UndirectedMultigraph(6, [(1, 2), (4, 5), (5, 6), (6, 4)])
        assert validate_tree_decomposition(g, heuristic_tree_decomposition(g)) == 2

    def test_random_connected_graphs_up_to_50(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(1, 50)
            edges = [(rng.randint(1, v - 1), v) for v in range(2, n + 1)]
            edges += [(rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(0, n))]
            g = UndirectedMultigraph(n, [e for e in edges if e[0] != e[1]])
            validate_tree_decomposition(g, heuristic_tree_decomposition(g))


class TestMakeNice:
    def test_single_edge(self):
        g = path_graph(2)
        nt = make_nice(g, TreeDecomposition([{1, 2}]))
        assert nt.kind_counts()[INTRODUCE_EDGE] == 1

    def test_triangle(self):
        nt = make_nice(triangle(), TreeDecomposition([{1, 2, 3}]))
        assert nt.kind_counts()[INTRODUCE_EDGE] == 3

    def test_normal_form(self):
        g = bowtie()
        nt = make_nice(g, heuristic_tree_decomposition(g))
        assert nt.nodes[nt.root].bag == frozenset()
        assert all(not nd.bag for nd in nt.nodes if nd.kind == LEAF)
        assert sum(nd.kind == FORGET for nd in nt.nodes) == g.vertex_count

    def test_join_nodes_appear_for_branching_trees(self):
        g = UndirectedMultigraph(4, [(1, 2), (1, 3), (1, 4)])
        td = TreeDecomposition([{1}, {1, 2}, {1, 3}, {1, 4}], [(0, 1), (0, 2), (0, 3)])
        nt = make_nice(g, td)
        assert nt.kind_counts()[JOIN] == 2
        joins = [nd for nd in nt.nodes if nd.kind == JOIN]
        assert all(nt.nodes[a].bag == nt.nodes[b].bag == nd.bag for nd in joins for a, b in [nd.children])

    def test_multi_arcs_and_loops_each_introduced_once(self):
        d = DirectedMultigraph(3, [(1, 2), (1, 2), (2, 2), (3, 1), (2, 3)])
        nt = make_nice(d, heuristic_tree_decomposition(d))
        assert nt.introduced_edges() == d.multiplicities()

    def test_invalid_input(self):
        with pytest.raises(InvalidDecomposition):
            make_nice(triangle(), TreeDecomposition([{1, 2}, {2, 3}], [(0, 1)]))

    def test_any_root(self):
        g = grid_graph(2, 5)
        td = heuristic_tree_decomposition(g)
        for root in range(len(td.bags)):
            nt = make_nice(g, td, root=root)
            assert nt.width <= td.width
            validate_tree_decomposition(g, nt.to_tree_decomposition())

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10_000))
    def test_preserves_validity_and_width(self, seed):
        (d,) = random_digraphs(seed, 1, 8)
        td = heuristic_tree_decomposition(d)
        nt = make_nice(d, td)
        assert check_nice(d, nt) <= td.width
        kids = [c for nd in nt.nodes for c in nd.children]
        assert sorted(kids) == list(range(len(nt.nodes) - 1))
