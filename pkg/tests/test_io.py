import pytest

from twcount.decomposition import TreeDecomposition, validate_tree_decomposition
from twcount.errors import ParseError
from twcount.graphs import DirectedMultigraph, SquareIntMatrix, UndirectedMultigraph, bowtie
from twcount.io import (
    format_decomposition,
    format_graph,
    format_matrix,
    parse_decomposition,
    parse_graph,
    parse_matrix,
)


def test_undirected_graph_with_comments_and_multiplicity():
    g = parse_graph("c a doubled edge\np tw 3 3\n1 2\n1 2\nc mid\n2 3\n")
    assert isinstance(g, UndirectedMultigraph)
    assert g.edges == ((1, 2), (1, 2), (2, 3))


def test_directed_graph():
    d = parse_graph("p dgr 2 2\n1 2\n2 1\n")
    assert isinstance(d, DirectedMultigraph) and d.arcs == ((1, 2), (2, 1))


@pytest.mark.parametrize("text", [
    "1 2\n",
    "p tw 2 2\n1 2\n",
    "p tw 2 1\n1 3\n",
    "p xx 2 1\n1 2\n",
    "p tw 2 1\n1 b\n",
])
def test_graph_errors(text):
    with pytest.raises(ParseError):
        parse_graph(text)


def test_graph_round_trip():
    g = bowtie()
    assert parse_graph(format_graph(g)) == g
    d = DirectedMultigraph(3, [(1, 2), (2, 2), (3, 1)])
    assert parse_graph(format_graph(d)) == d


def test_decomposition_round_trip():
    text = "c path\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n"
    td = parse_decomposition(text)
    assert td.bags == (frozenset({1, 2}), frozenset({2, 3}))
    assert td.tree_edges == ((0, 1),)
    assert parse_decomposition(format_decomposition(td, 3)) == td


@pytest.mark.parametrize("text", [
    "b 1 1 2\n",
    "s td 2 2 3\nb 1 1 2\n",
    "s td 1 3 3\nb 1 1 2\n",
    "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 5\n",
])
def test_decomposition_errors(text):
    with pytest.raises(ParseError):
        parse_decomposition(text)


def test_matrix():
    m = parse_matrix("3\n1 1 1\n1 -1 1\n1 1 123456789012345678901234567890\n")
    assert m.rows[2][2] == 123456789012345678901234567890
    assert parse_matrix(format_matrix(m)) == m


@pytest.mark.parametrize("text", ["", "2\n1 2\n", "2\n1 2\n3\n", "x\n"])
def test_matrix_errors(text):
    with pytest.raises(ParseError):
        parse_matrix(text)
