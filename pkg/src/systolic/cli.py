"""Command-line interface.

Subcommands:

* ``build-ball``      materialize a ball of the two-generator complex and
                      export it as JSON and/or DOT
* ``verify-lemmas``   run the per-n verification suites
* ``assemble-link``   glue the real-vertex link for a defining graph
* ``certify``         full link-level certification of a defining graph
* ``export``          convert a previously exported ball JSON to DOT

Exit codes: 0 all checks passed, 1 checks failed or budget exhausted,
2 invalid input.  Outputs are byte-stable for fixed inputs: every dict is
built in a fixed key order, every list is sorted, and worker counts only
parallelize independent check units whose results are merged in sorted
order.  The cell budget defaults to ``DEFAULT_MAX_CELLS`` and can be
overridden by ``--max-cells`` or the ``SYSTOLIC_MAX_CELLS`` environment
variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .complexes import DEFAULT_MAX_CELLS, RealVertex, build_ball
from .errors import DefiningGraphError, ResourceBudgetError
from .gamma import assemble_real_link, certify_systolic_links, parse_defining_graph
from .verify import run_checks

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INVALID = 2


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def ball_json_to_dot(data: dict) -> str:
    """Render an exported ball as DOT: real vertices solid, interior hollow,
    zigzag edges dashed (the drawing convention used throughout)."""
    lines = [
        "graph ball {",
        "  node [shape=circle, fontsize=9];",
    ]
    for rec in data["vertices"]:
        style = "filled" if rec["kind"] == "real" else "solid"
        lines.append(f"  {_quote(rec['key'])} [style={style}];")
    for v, w, kind in data["edges"]:
        attr = " [style=dashed]" if kind == "zigzag" else ""
        lines.append(f"  {_quote(v)} -- {_quote(w)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(graph, solid_keys: set[str]) -> str:
    lines = ["graph link {", "  node [shape=circle, fontsize=9];"]
    for v in graph.vertices():
        style = "filled" if v in solid_keys else "solid"
        lines.append(f"  {_quote(v)} [style={style}];")
    for v, w in graph.edges():
        lines.append(f"  {_quote(v)} -- {_quote(w)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_n_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}; use e.g. '4' or '3..6'")
    if not values or any(v < 2 for v in values):
        raise argparse.ArgumentTypeError("n values must be integers >= 2")
    return values


def _max_cells(args) -> int:
    if args.max_cells is not None:
        return args.max_cells
    env = os.environ.get("SYSTOLIC_MAX_CELLS")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_MAX_CELLS


def _cmd_build_ball(args) -> int:
    if args.radius < 0:
        print("error: radius must be >= 0", file=sys.stderr)
        return EXIT_INVALID
    if args.format == "both" and args.out is None:
        print("error: --format both requires --out", file=sys.stderr)
        return EXIT_INVALID
    try:
        ball = build_ball(args.n, args.radius, systolize=not args.no_systolize,
                          max_cells=_max_cells(args))
    except ResourceBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    data = ball.to_json_dict()
    summary = [
        f"cells: {data['cell_count']}",
        f"vertices: {data['vertex_count']}",
        f"edges: {data['edge_count']}",
    ]
    try:
        summary.append(f"max simplex dimension: {ball.max_simplex_dimension()}")
    except Exception:
        summary.append("max simplex dimension: n/a (no exact-region vertex; increase radius)")
    if args.n == 2:
        exact_links = [
            len(ball.link_of(v))
            for key, v in sorted(ball.vertices.items())
            if isinstance(v, RealVertex) and ball.exact_link_region(v)
        ]
        if exact_links:
            six = all(size == 6 for size in exact_links)
            summary.append(
                "n=2 structure: squares with a diagonal; every exact-region link is a "
                + ("6-cycle (triangulated plane)" if six else "NOT a 6-cycle (unexpected)")
            )
    info = sys.stderr if args.out is None else sys.stdout
    for line in summary:
        print(line, file=info)

    if args.format in ("json", "both"):
        text = _dump_json(data)
        _write_output(text, args.out + ".json" if args.format == "both" else args.out)
    if args.format in ("dot", "both"):
        text = ball_json_to_dot(data)
        _write_output(text, args.out + ".dot" if args.format == "both" else args.out)
    return EXIT_PASS


def _suite_task(task) -> dict:
    n, radius, systolize, max_cells = task
    return run_checks(n, radius=radius, systolize=systolize, max_cells=max_cells)


def _cmd_verify_lemmas(args) -> int:
    tasks = [(n, args.radius, not args.no_systolize, _max_cells(args)) for n in args.n]
    try:
        if args.workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                results = list(pool.map(_suite_task, tasks))
        else:
            results = [_suite_task(t) for t in tasks]
    except ResourceBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    results.sort(key=lambda r: r["n"])
    status = "pass" if all(r["status"] == "pass" for r in results) else "fail"
    report = {
        "command": "verify-lemmas",
        "systolized": not args.no_systolize,
        "status": status,
        "results": results,
    }
    _write_output(_dump_json(report), args.out)
    if args.expect_failure:
        return EXIT_PASS if status == "fail" else EXIT_FAIL
    return EXIT_PASS if status == "pass" else EXIT_FAIL


def _load_gamma(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DefiningGraphError(str(exc), "file")
    return parse_defining_graph(text)


def _cmd_assemble_link(args) -> int:
    try:
        gamma = _load_gamma(args.gamma)
    except DefiningGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    assembled = assemble_real_link(gamma)
    if args.format == "dot":
        solid = {k for pair in assembled.real_vertices.values() for k in pair}
        solid |= {k for k in assembled.graph.vertices() if "|R:" in k}
        _write_output(graph_to_dot(assembled.graph, solid), args.out)
    else:
        data = {
            "generators": list(gamma.generators),
            "edges": [{"u": e.u, "v": e.v, "m": e.m} for e in gamma.edges],
            "vertex_count": len(assembled.graph),
            "edge_count": assembled.graph.edge_count(),
            "real_vertices": {s: list(p) for s, p in sorted(assembled.real_vertices.items())},
            "blocks": {name: list(keys) for name, keys in sorted(assembled.block_vertices.items())},
            "graph_edges": [list(e) for e in assembled.graph.edges()],
        }
        _write_output(_dump_json(data), args.out)
    return EXIT_PASS


def _cmd_certify(args) -> int:
    try:
        gamma = _load_gamma(args.gamma)
    except DefiningGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report = certify_systolic_links(gamma, workers=args.workers,
                                    systolize=not args.no_systolize)
    _write_output(_dump_json(report.to_json_dict()), args.out)
    return EXIT_PASS if report.verdict == "pass" else EXIT_FAIL


def _cmd_export(args) -> int:
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read ball JSON: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
        print("error: not a ball export (missing vertices/edges)", file=sys.stderr)
        return EXIT_INVALID
    _write_output(ball_json_to_dot(data), args.out)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="systolic",
        description="Build and verify triangulated complexes for two-generator "
                    "Artin groups and their assemblies over labeled defining graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-ball", help="materialize a ball of the complex")
    p.add_argument("--n", type=int, required=True, help="relator half-length (>= 2)")
    p.add_argument("--radius", type=int, required=True, help="word-length radius for left tips")
    p.add_argument("--no-systolize", action="store_true", help="omit the diagonal edges")
    p.add_argument("--format", choices=("json", "dot", "both"), default="json")
    p.add_argument("--out", default=None, help="output path (default: stdout; "
                                               "'both' appends .json/.dot)")
    p.add_argument("--max-cells", type=int, default=None)
    p.set_defaults(func=_cmd_build_ball)

    p = sub.add_parser("verify-lemmas", help="run the per-n verification suites")
    p.add_argument("--n", type=_parse_n_range, required=True, metavar="N|LO..HI")
    p.add_argument("--radius", type=int, default=None,
                   help="ball radius for the intersection checks (default per n)")
    p.add_argument("--no-systolize", action="store_true",
                   help="negative control: only the real-link check, no diagonals")
    p.add_argument("--expect-failure", action="store_true",
                   help="exit 0 when the suite fails (for the negative control)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--max-cells", type=int, default=None)
    p.set_defaults(func=_cmd_verify_lemmas)

    p = sub.add_parser("assemble-link", help="glue the real-vertex link of a defining graph")
    p.add_argument("--gamma", required=True, help="defining-graph JSON file")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_assemble_link)

    p = sub.add_parser("certify", help="certify all link-level conditions of a defining graph")
    p.add_argument("--gamma", required=True, help="defining-graph JSON file")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-systolize", action="store_true",
                   help="negative control: assemble without diagonal edges")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("export", help="convert an exported ball JSON to DOT")
    p.add_argument("--input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and isinstance(args.n, int) and args.n < 2:
        print("error: --n must be >= 2", file=sys.stderr)
        return EXIT_INVALID
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_INVALID
    if getattr(args, "max_cells", None) is not None and args.max_cells < 1:
        print("error: --max-cells must be >= 1", file=sys.stderr)
        return EXIT_INVALID
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
