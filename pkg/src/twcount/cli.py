"""``twcount`` command line: exact counts over PACE-style input files.

Exit codes: 0 success, 1 domain error (or a verify MISMATCH), 2 usage or
input-file error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import oracle
from .algebra import trace_power
from .ccdp import (
    DEFAULT_MAX_WIDTH,
    characteristic_polynomial,
    cycle_cover_histogram,
    determinant,
    weighted_cycle_cover_histogram,
)
from .counting import (
    DEFAULT_MAX_EDGES,
    count_arborescences,
    count_directed_euler_tours,
    count_spanning_trees,
    count_undirected_euler_tours,
)
from .decomposition import heuristic_tree_decomposition, validate_tree_decomposition
from .errors import DimensionTooLarge, ParseError, TwCountError
from .graphs import DirectedMultigraph, UndirectedMultigraph, ord_gadget, support_digraph
from .io import format_decomposition, format_graph, parse_decomposition, parse_graph, parse_matrix
from .polynomial import format_polynomial

COMMANDS = (
    "decomp", "validate", "det", "charpoly", "trace", "histogram", "spanning",
    "arborescences", "euler-dir", "euler-undir", "gadget-ord", "verify",
)


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    input_sha256: str
    width: int | None
    result: Any
    elapsed_ms: float = 0.0
    verify: dict | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "input_sha256": self.input_sha256,
            "width": self.width,
            "result": self.result,
        }
        if self.verify is not None:
            payload["verify"] = self.verify
        payload["elapsed_ms"] = round(self.elapsed_ms, 3)
        return json.dumps(payload)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.width is not None:
            lines.append(f"width: {self.width}")
        result = self.result
        if isinstance(result, dict):
            lines.append("result:")
            lines += [f"  {k}: {v}" for k, v in result.items()]
        elif isinstance(result, str) and "\n" in result:
            lines.append("result:")
            lines.append(result.rstrip("\n"))
        else:
            lines.append(f"result: {result}")
        for k, v in self.extra.items():
            lines.append(f"{k}: {v}")
        if self.verify is not None:
            if "checks" in self.verify:
                for name, status in self.verify["checks"].items():
                    lines.append(f"verify {name}: {status}")
            else:
                lines.append(f"verify: {self.verify['status']} ({self.verify['oracle']})")
        return "\n".join(lines)


class _Inputs:
    """Loads the files named on the command line and hashes their bytes."""

    def __init__(self, args):
        self.args = args
        self.digest = hashlib.sha256()

    def _read(self, path: str) -> str:
        try:
            data = Path(path).read_bytes()
        except OSError as err:
            raise UsageError(f"cannot read {path}: {err.strerror}") from None
        self.digest.update(data)
        return data.decode()

    def matrix(self):
        if not self.args.matrix:
            raise UsageError(f"{self.args.command} needs --matrix FILE")
        return parse_matrix(self._read(self.args.matrix))

    def graph(self, kind=None):
        if not self.args.graph:
            raise UsageError(f"{self.args.command} needs --graph FILE")
        g = parse_graph(self._read(self.args.graph))
        if kind is not None and not isinstance(g, kind):
            want = "directed ('p dgr')" if kind is DirectedMultigraph else "undirected ('p tw')"
            raise UsageError(f"{self.args.command} needs a {want} graph")
        return g

    def td(self, g):
        if getattr(self.args, "td", None):
            return parse_decomposition(self._read(self.args.td))
        return heuristic_tree_decomposition(g)

    def sha(self) -> str:
        return self.digest.hexdigest()


def _verify(engine_value, oracle_name: str, oracle_fn: Callable[[], Any]) -> dict:
    try:
        expected = oracle_fn()
    except DimensionTooLarge as err:
        return {"status": "SKIPPED", "oracle": oracle_name, "reason": str(err)}
    status = "MATCH" if expected == engine_value else "MISMATCH"
    return {"status": status, "oracle": oracle_name, "oracle_result": _jsonable(expected)}


def _jsonable(value):
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items())}
    if hasattr(value, "coeffs"):
        return [str(c) for c in value.coeffs]
    if hasattr(value, "counts"):
        return _jsonable(value.counts)
    return value


def _run_command(args, inputs: _Inputs) -> RunReport:
    cmd = args.command
    mw = args.max_width
    verify = None
    extra = {}

    if cmd in ("det", "charpoly", "trace"):
        m = inputs.matrix()
        td = inputs.td(support_digraph(m))
        width = td.width
        if cmd == "det":
            value = determinant(m, td, mw)
            check = ("det_fraction_free", lambda: oracle.det_fraction_free(m))
        elif cmd == "charpoly":
            value = characteristic_polynomial(m, td, mw)
            extra["polynomial"] = format_polynomial(value.coeffs)
            check = ("charpoly_interpolation", lambda: oracle.charpoly_interpolation(m))
        else:
            if args.k is None or args.k < 1:
                raise UsageError("trace needs --k N with N >= 1")
            value = trace_power(m, args.k, td, mw)
            check = ("matrix_power_trace", lambda: oracle.matrix_power_trace(m, args.k))
    elif cmd == "histogram":
        if args.matrix:
            m = inputs.matrix()
            d = support_digraph(m)
            td = inputs.td(d)
            if args.weighted:
                value = weighted_cycle_cover_histogram(m, td, mw)
                check = None
            else:
                value = cycle_cover_histogram(d, td, mw)
                check = ("enumerate_cycle_covers", lambda: oracle.enumerate_cycle_covers(d))
        else:
            d = inputs.graph(DirectedMultigraph)
            td = inputs.td(d)
            value = cycle_cover_histogram(d, td, mw)
            check = ("enumerate_cycle_covers", lambda: oracle.enumerate_cycle_covers(d))
        width = td.width
        extra["signed_sum"] = value.signed_sum()
    elif cmd == "spanning":
        g = inputs.graph(UndirectedMultigraph)
        td = inputs.td(g)
        width = td.width
        value = count_spanning_trees(g, td, mw, root=args.root or 1)
        check = ("enumerate_spanning_trees", lambda: oracle.enumerate_spanning_trees(g))
    elif cmd == "arborescences":
        d = inputs.graph(DirectedMultigraph)
        td = inputs.td(d)
        width = td.width
        root = args.root or 1
        value = count_arborescences(d, root, td, mw)
        check = ("enumerate_arborescences", lambda: oracle.enumerate_arborescences(d, root))
    elif cmd == "euler-dir":
        d = inputs.graph(DirectedMultigraph)
        td = inputs.td(d)
        width = td.width
        value = count_directed_euler_tours(d, td, mw)
        check = ("enumerate_euler_tours", lambda: oracle.enumerate_euler_tours(d))
    elif cmd == "euler-undir":
        g = inputs.graph(UndirectedMultigraph)
        td = inputs.td(g)
        width = td.width
        value = count_undirected_euler_tours(g, td, mw, args.max_edges)
        check = ("enumerate_euler_tours", lambda: oracle.enumerate_euler_tours(g))
    else:
        raise UsageError(f"unknown command {cmd}")

    if args.verify and check is not None:
        name, fn = check
        engine_value = value.counts if cmd == "histogram" else value
        verify = _verify(engine_value, name, fn)
    return RunReport(cmd, inputs.sha(), width, _jsonable(value), verify=verify, extra=extra)


def _run_decomp(args, inputs: _Inputs) -> RunReport:
    g = inputs.graph() if args.graph else support_digraph(inputs.matrix())
    td = heuristic_tree_decomposition(g)
    validate_tree_decomposition(g, td)
    text = format_decomposition(td, g.vertex_count)
    if args.out:
        Path(args.out).write_text(text)
    return RunReport("decomp", inputs.sha(), td.width, text)


def _run_validate(args, inputs: _Inputs) -> RunReport:
    g = inputs.graph() if args.graph else support_digraph(inputs.matrix())
    if not args.td:
        raise UsageError("validate needs --td FILE")
    td = inputs.td(g)
    width = validate_tree_decomposition(g, td)
    return RunReport("validate", inputs.sha(), width, "valid")


def _run_gadget(args, inputs: _Inputs) -> RunReport:
    if args.n is None or args.s is None or args.t is None:
        raise UsageError("gadget-ord needs --n, --s and --t")
    inputs.digest.update(f"{args.n} {args.s} {args.t} {args.literal}".encode())
    d = ord_gadget(args.n, args.s, args.t, literal=args.literal)
    text = format_graph(d)
    if args.out:
        Path(args.out).write_text(text)
    adjacency = d.adjacency_matrix()
    td = heuristic_tree_decomposition(d)
    det = determinant(adjacency, td, args.max_width)
    verify = None
    if args.verify:
        verify = _verify(det, "det_fraction_free", lambda: oracle.det_fraction_free(adjacency))
    return RunReport(
        "gadget-ord", inputs.sha(), td.width, text, verify=verify,
        extra={"determinant": det, "s_precedes_t": args.s < args.t},
    )


def _run_verify(args, inputs: _Inputs) -> RunReport:
    """Run every engine/oracle pair applicable to the given input."""
    checks = {}
    if args.matrix:
        m = inputs.matrix()
        d = support_digraph(m)
        td = inputs.td(d)
        pairs = [
            ("det", lambda: determinant(m, td, args.max_width), "det_fraction_free",
             lambda: oracle.det_fraction_free(m)),
            ("det", lambda: determinant(m, td, args.max_width), "det_permutation_expansion",
             lambda: oracle.det_permutation_expansion(m)),
            ("charpoly", lambda: characteristic_polynomial(m, td, args.max_width),
             "charpoly_interpolation", lambda: oracle.charpoly_interpolation(m)),
            ("histogram", lambda: cycle_cover_histogram(d, td, args.max_width).counts,
             "enumerate_cycle_covers", lambda: oracle.enumerate_cycle_covers(d)),
        ]
        for k in range(1, (args.k or 3) + 1):
            pairs.append((f"trace k={k}", lambda k=k: trace_power(m, k, td, args.max_width),
                          "matrix_power_trace", lambda k=k: oracle.matrix_power_trace(m, k)))
    else:
        g = inputs.graph()
        td = inputs.td(g)
        if isinstance(g, DirectedMultigraph):
            pairs = [
                ("histogram", lambda: cycle_cover_histogram(g, td, args.max_width).counts,
                 "enumerate_cycle_covers", lambda: oracle.enumerate_cycle_covers(g)),
                ("arborescences", lambda: count_arborescences(g, args.root or 1, td, args.max_width),
                 "enumerate_arborescences", lambda: oracle.enumerate_arborescences(g, args.root or 1)),
                ("euler-dir", lambda: count_directed_euler_tours(g, td, args.max_width),
                 "enumerate_euler_tours", lambda: oracle.enumerate_euler_tours(g)),
            ]
        else:
            pairs = [
                ("spanning", lambda: count_spanning_trees(g, td, args.max_width),
                 "enumerate_spanning_trees", lambda: oracle.enumerate_spanning_trees(g)),
                ("euler-undir", lambda: count_undirected_euler_tours(g, td, args.max_width, args.max_edges),
                 "enumerate_euler_tours", lambda: oracle.enumerate_euler_tours(g)),
            ]
    mismatch = False
    for name, engine, oracle_name, oracle_fn in pairs:
        label = f"{name} vs {oracle_name}"
        try:
            value = engine()
        except TwCountError as err:
            checks[label] = f"ERROR ({type(err).__name__}: {err})"
            continue
        outcome = _verify(value, oracle_name, oracle_fn)
        mismatch |= outcome["status"] == "MISMATCH"
        if outcome["status"] == "SKIPPED":
            checks[label] = f"SKIPPED ({outcome['reason']})"
        else:
            checks[label] = outcome["status"]
    caps = {k: str(v) for k, v in oracle.CAPS.items()}
    report = RunReport("verify", inputs.sha(), td.width, "MISMATCH" if mismatch else "MATCH",
                       verify={"checks": checks, "caps": caps})
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twcount",
        description="Exact determinants, characteristic polynomials and graph counts "
        "via cycle-cover dynamic programming on tree decompositions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, matrix=False, graph=False, td=True):
        p = sub.add_parser(name, help=help_text, description=help_text)
        if matrix:
            p.add_argument("--matrix", metavar="FILE", help="matrix file: n, then n rows")
        if graph:
            p.add_argument("--graph", metavar="FILE", help="PACE graph file ('p tw' or 'p dgr')")
        if td:
            p.add_argument("--td", metavar="FILE", help="PACE .td decomposition (default: min-fill)")
        p.add_argument("--max-width", type=int, default=DEFAULT_MAX_WIDTH,
                       help=f"refuse decompositions wider than this (default {DEFAULT_MAX_WIDTH})")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--verify", action="store_true", help="check the result against an oracle")
        return p

    p = add("decomp", "Compute a min-fill tree decomposition", matrix=True, graph=True, td=False)
    p.add_argument("--out", metavar="FILE", help="write the .td file here")
    add("validate", "Validate a decomposition and print its width", matrix=True, graph=True)
    add("det", "Determinant of an integer matrix", matrix=True)
    add("charpoly", "Characteristic polynomial det(xI - A), coefficients low to high", matrix=True)
    p = add("trace", "Trace of the k-th matrix power", matrix=True)
    p.add_argument("--k", type=int, help="power k >= 1")
    p = add("histogram", "Cycle covers counted by number of cycles", matrix=True, graph=True)
    p.add_argument("--weighted", action="store_true", help="weight covers by matrix entries")
    p = add("spanning", "Spanning trees of an undirected multigraph", graph=True)
    p.add_argument("--root", type=int, help="root used internally (default 1)")
    p = add("arborescences", "Arborescences toward a root in a digraph", graph=True)
    p.add_argument("--root", type=int, help="root vertex (default 1)")
    add("euler-dir", "Directed Euler circuits (BEST theorem)", graph=True)
    p = add("euler-undir", "Undirected Euler circuits via Eulerian orientations", graph=True)
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES,
                   help=f"orientation enumeration cap (default {DEFAULT_MAX_EDGES})")
    p = add("gadget-ord", "Write the path-order determinant gadget as a digraph file", td=False)
    p.add_argument("--n", type=int, help="path length")
    p.add_argument("--s", type=int, help="first marked vertex")
    p.add_argument("--t", type=int, help="second marked vertex")
    p.add_argument("--literal", action="store_true", help="use the unreconciled arc list")
    p.add_argument("--out", metavar="FILE", help="write the digraph here")
    p = add("verify", "Run all applicable engine-vs-oracle checks on one input", matrix=True, graph=True)
    p.add_argument("--k", type=int, help="check traces for powers 1..k (default 3)")
    p.add_argument("--root", type=int, help="arborescence root (default 1)")
    p.add_argument("--max-edges", type=int, default=DEFAULT_MAX_EDGES)
    return parser


def run(argv=None) -> tuple[int, RunReport | None]:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = _Inputs(args)
    start = time.perf_counter()
    try:
        if args.command == "decomp":
            report = _run_decomp(args, inputs)
        elif args.command == "validate":
            report = _run_validate(args, inputs)
        elif args.command == "gadget-ord":
            report = _run_gadget(args, inputs)
        elif args.command == "verify":
            report = _run_verify(args, inputs)
        else:
            report = _run_command(args, inputs)
    except (UsageError, ParseError) as err:
        print(f"twcount {args.command}: {err}", file=sys.stderr)
        return 2, None
    except TwCountError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 1, None
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    print(report.to_json() if args.json else report.to_text())
    failed = report.verify is not None and (
        report.verify.get("status") == "MISMATCH" or report.result == "MISMATCH"
    )
    return (1 if failed else 0), report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
