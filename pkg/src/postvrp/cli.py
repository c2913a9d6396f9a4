"""Command line entry point: build, generate, verify, matrix, solve, evaluate, render.

Exit codes: 0 success, 1 validation or verification failure, 2 usage error.
All file outputs are written atomically (temp file + rename).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from .errors import PostVRPError
from .geometry import build_graph, format_graph_dump
from .instance import (
    fingerprint,
    generate_instance,
    load_instance,
    parse_catalog,
    serialize_instance,
    verify_catalog,
)
from .metric import MATRIX_EXPORT_CAP, DistanceOracle, export_matrix
from .model import parse_model
from .render import render_svg
from .solution import is_feasible, objectives, parse_solution, partition, format_solution
from .solver import SearchConfig, solve


def _write_atomic(path: Path, data: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    tmp.write_text(data, encoding="utf-8", newline="\n")
    os.replace(tmp, path)


def _load_model(path: str):
    model = parse_model(Path(path).read_bytes())
    return model, build_graph(model)


def _load_instance_file(path: str):
    return load_instance(Path(path).read_text(encoding="utf-8"))


def _search_config(args) -> SearchConfig:
    kwargs = {}
    if args.mode:
        kwargs["mode"] = {"lex": "lexicographic", "scalar": "scalarized"}.get(args.mode, args.mode)
    if args.weights:
        parts = [float(x) for x in args.weights.split(",")]
        if len(parts) != 3:
            raise PostVRPError("--weights needs three comma-separated numbers")
        kwargs["weights"] = tuple(parts)
    if args.max_passes is not None:
        kwargs["max_passes"] = args.max_passes
    if args.time_budget is not None:
        kwargs["time_budget"] = args.time_budget
    if args.seed_override is not None:
        kwargs["seed"] = args.seed_override
    return SearchConfig(**kwargs)


def _cmd_build(args) -> int:
    model, graph = _load_model(args.model)
    total = sum(graph.edge_weight)
    print(f"vertices={len(graph.vertices)} edges={len(graph.edges)} total_length={total:.3f}")
    if args.out:
        _write_atomic(Path(args.out), format_graph_dump(graph))
        print(f"wrote {args.out}")
    return 0


def _cmd_generate(args) -> int:
    model, graph = _load_model(args.model)
    if args.precision is not None:
        model = replace(model, precision=args.precision)
    rows = parse_catalog(Path(args.catalog).read_text(encoding="utf-8"))
    out_root = Path(args.out)
    for row in rows:
        if args.seed_override is not None:
            row = replace(row, seed=args.seed_override)
        instance = generate_instance(model, graph, row)
        path = out_root / row.dir / row.subdir / "instance.txt"
        _write_atomic(path, serialize_instance(instance))
        print(f"wrote {path} md5={fingerprint(instance)}")
    return 0


def _cmd_verify(args) -> int:
    model, graph = _load_model(args.model)
    rows = parse_catalog(Path(args.catalog).read_text(encoding="utf-8"))
    results = verify_catalog(model, graph, rows)
    failures = 0
    for res in results:
        line = f"{res.row.id} {res.status} {res.computed}"
        if res.status == "FAIL":
            failures += 1
            line += f" (catalog says {res.row.md5})"
        print(line)
    counts = {s: sum(1 for r in results if r.status == s) for s in ("PASS", "FAIL", "SKIP")}
    print(f"{counts['PASS']} PASS, {counts['FAIL']} FAIL, {counts['SKIP']} SKIP")
    return 1 if failures else 0


def _cmd_matrix(args) -> int:
    model, graph = _load_model(args.model)
    instance = _load_instance_file(args.instance)
    oracle = DistanceOracle(graph, instance.deliveries, model)
    precision = args.precision if args.precision is not None else instance.precision
    cap = args.matrix_cap if args.matrix_cap is not None else MATRIX_EXPORT_CAP
    _write_atomic(Path(args.out), export_matrix(oracle, precision, cap))
    print(f"wrote {args.out}")
    return 0


def _cmd_solve(args) -> int:
    model, graph = _load_model(args.model)
    instance = _load_instance_file(args.instance)
    row = instance.row
    if row.n < 1 or row.k < 1:
        raise PostVRPError("instance needs n >= 1 and k >= 1 to be solved")
    oracle = DistanceOracle(graph, instance.deliveries, model)
    config = _search_config(args)
    result = solve(oracle, row.n, row.k, row.w_max, config)
    vec = result.vector
    print(
        f"{vec.total_length:.6f} {vec.route_count} {vec.spread:.6f} "
        f"{1 if result.feasible else 0} {result.stats.passes} {result.stats.elapsed:.3f}"
    )
    if args.out:
        _write_atomic(Path(args.out), format_solution(result.solution))
        print(f"wrote {args.out}")
    return 0


def _cmd_evaluate(args) -> int:
    model, graph = _load_model(args.model)
    instance = _load_instance_file(args.instance)
    sol = parse_solution(Path(args.solution).read_text(encoding="utf-8"))
    if sol.n != instance.row.n:
        raise PostVRPError(
            f"solution has n={sol.n} but the instance has n={instance.row.n}"
        )
    oracle = DistanceOracle(graph, instance.deliveries, model)
    vec = objectives(sol, oracle)
    feasible, violation = is_feasible(sol, oracle, instance.row.w_max, sol.k)
    line = (
        f"{vec.total_length:.6f} {vec.route_count} {vec.spread:.6f} "
        f"{1 if feasible else 0}"
    )
    if not feasible and violation is not None:
        line += f" violated_route={violation}"
    print(line)
    return 0


def _cmd_render(args) -> int:
    model, graph = _load_model(args.model)
    deliveries = None
    routes = None
    if args.instance:
        deliveries = _load_instance_file(args.instance).deliveries
    if args.solution:
        if deliveries is None:
            raise PostVRPError("--solution requires --instance")
        sol = parse_solution(Path(args.solution).read_text(encoding="utf-8"))
        routes = partition(sol)
    svg = render_svg(model, graph, deliveries, routes, background_href=args.background)
    _write_atomic(Path(args.out), svg)
    print(f"wrote {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="postvrp",
        description="Street-map delivery benchmark generator, verifier and baseline solver.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--model", required=True, help="model file")
        return p

    p = add("build", _cmd_build, "build the street graph and report its size")
    p.add_argument("--out", help="write a V/E debug dump here")

    p = add("generate", _cmd_generate, "generate instance files from a catalog")
    p.add_argument("--catalog", required=True)
    p.add_argument("--out", required=True, help="output directory root")
    p.add_argument("--seed-override", type=int)
    p.add_argument("--precision", type=int)

    p = add("verify", _cmd_verify, "regenerate a catalog and check the MD5 column")
    p.add_argument("--catalog", required=True)

    p = add("matrix", _cmd_matrix, "export the pairwise weight matrix of an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--precision", type=int)
    p.add_argument("--matrix-cap", type=int)

    p = add("solve", _cmd_solve, "run greedy construction plus swap descent")
    p.add_argument("--instance", required=True)
    p.add_argument("--out", help="write the solution file here")
    p.add_argument("--mode", choices=["lex", "scalar", "lexicographic", "scalarized"])
    p.add_argument("--weights", help="three comma-separated scalarization weights")
    p.add_argument("--max-passes", type=int)
    p.add_argument("--time-budget", type=float)
    p.add_argument("--seed-override", type=int)

    p = add("evaluate", _cmd_evaluate, "score a solution file against an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--solution", required=True)

    p = add("render", _cmd_render, "render the map, an instance and/or a solution to SVG")
    p.add_argument("--instance")
    p.add_argument("--solution")
    p.add_argument("--out", required=True)
    p.add_argument("--background", help="href of a raster background to reference")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PostVRPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
