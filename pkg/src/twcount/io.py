"""Readers and writers for PACE-style graph, decomposition and matrix files.

Graphs: ``p tw <n> <m>`` (undirected) or ``p dgr <n> <m>`` (directed),
then ``m`` lines ``u v``.  Decompositions: ``s td <bags> <width+1> <n>``,
``b <i> <v...>`` lines, then bag-tree edges ``i j``; bags are 1-indexed in
the file and 0-indexed in memory.  Matrices: ``<n>`` then ``n`` rows.
Lines starting with ``c`` are comments everywhere.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .decomposition import TreeDecomposition
from .errors import ParseError
from .graphs import DirectedMultigraph, SquareIntMatrix, UndirectedMultigraph

PathLike = Union[str, Path]


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("c"):
            yield lineno, line.split()


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_graph(text: str) -> Union[UndirectedMultigraph, DirectedMultigraph]:
    header = None
    pairs = []
    for lineno, tok in _lines(text):
        if tok[0] == "p":
            if header is not None or len(tok) != 4 or tok[1] not in ("tw", "dgr"):
                raise ParseError(f"line {lineno}: bad header, want 'p tw|dgr <n> <m>'")
            header = (tok[1], *_ints(tok[2:], lineno))
            continue
        if header is None:
            raise ParseError(f"line {lineno}: edge before 'p' header")
        if len(tok) != 2:
            raise ParseError(f"line {lineno}: expected 'u v'")
        pairs.append(tuple(_ints(tok, lineno)))
    if header is None:
        raise ParseError("missing 'p' header")
    kind, n, m = header
    if len(pairs) != m:
        raise ParseError(f"header promises {m} edges, found {len(pairs)}")
    for u, v in pairs:
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"edge ({u},{v}) outside 1..{n}")
    cls = UndirectedMultigraph if kind == "tw" else DirectedMultigraph
    return cls(n, pairs)


def format_graph(g: Union[UndirectedMultigraph, DirectedMultigraph]) -> str:
    directed = isinstance(g, DirectedMultigraph)
    pairs = g.arcs if directed else g.edges
    out = [f"p {'dgr' if directed else 'tw'} {g.vertex_count} {len(pairs)}"]
    out += [f"{u} {v}" for u, v in pairs]
    return "\n".join(out) + "\n"


def parse_decomposition(text: str) -> TreeDecomposition:
    header = None
    bags: dict[int, list[int]] = {}
    edges = []
    for lineno, tok in _lines(text):
        if tok[0] == "s":
            if header is not None or len(tok) != 5 or tok[1] != "td":
                raise ParseError(f"line {lineno}: bad header, want 's td <bags> <width+1> <n>'")
            header = _ints(tok[2:], lineno)
        elif header is None:
            raise ParseError(f"line {lineno}: content before 's td' header")
        elif tok[0] == "b":
            nums = _ints(tok[1:], lineno)
            if not nums or not (1 <= nums[0] <= header[0]) or nums[0] in bags:
                raise ParseError(f"line {lineno}: bad or repeated bag index")
            bags[nums[0]] = nums[1:]
        else:
            if len(tok) != 2:
                raise ParseError(f"line {lineno}: expected tree edge 'i j'")
            i, j = _ints(tok, lineno)
            if not (1 <= i <= header[0] and 1 <= j <= header[0]):
                raise ParseError(f"line {lineno}: tree edge refers to missing bag")
            edges.append((i - 1, j - 1))
    if header is None:
        raise ParseError("missing 's td' header")
    count, size, _n = header
    if len(bags) != count:
        raise ParseError(f"header promises {count} bags, found {len(bags)}")
    td = TreeDecomposition([bags[i] for i in range(1, count + 1)], edges)
    if count and td.width + 1 != size:
        raise ParseError(f"header says max bag size {size}, bags have {td.width + 1}")
    return td


def format_decomposition(td: TreeDecomposition, n: int) -> str:
    out = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    out += [" ".join(["b", str(i)] + [str(v) for v in sorted(b)]) for i, b in enumerate(td.bags, start=1)]
    out += [f"{i + 1} {j + 1}" for i, j in td.tree_edges]
    return "\n".join(out) + "\n"


def parse_matrix(text: str) -> SquareIntMatrix:
    rows = [(lineno, tok) for lineno, tok in _lines(text)]
    if not rows:
        raise ParseError("empty matrix file")
    lineno, first = rows[0]
    if len(first) != 1:
        raise ParseError(f"line {lineno}: first line must be the dimension")
    (n,) = _ints(first, lineno)
    if n < 0 or len(rows) - 1 != n:
        raise ParseError(f"dimension {n} but {len(rows) - 1} rows")
    body = []
    for lineno, tok in rows[1:]:
        if len(tok) != n:
            raise ParseError(f"line {lineno}: expected {n} entries, got {len(tok)}")
        body.append(_ints(tok, lineno))
    return SquareIntMatrix(body)


def format_matrix(m: SquareIntMatrix) -> str:
    return "\n".join([str(m.n)] + [" ".join(str(a) for a in r) for r in m.rows]) + "\n"


def read_graph(path: PathLike):
    return parse_graph(Path(path).read_text())


def read_decomposition(path: PathLike) -> TreeDecomposition:
    return parse_decomposition(Path(path).read_text())


def read_matrix(path: PathLike) -> SquareIntMatrix:
    return parse_matrix(Path(path).read_text())
