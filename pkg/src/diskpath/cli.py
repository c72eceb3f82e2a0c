"""Command-line front end.

Exit codes: 0 success, 1 invalid scene or arguments, 2 unreadable input,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

from .discretize import build_steiner_set, predicted_counts
from .geometry import Point
from .obstacle import MixedWeightError, TerminalInsideObstacle, exact_path
from .pathgraph import PathGraph, route
from .render import figure_bench, figure_scene, figure_verify, node_points, render_svg
from .scene import QueryPoints, SceneError, SceneParseError, load_scene, validate
from .spanner import build_yao, spanner_bound, spanning_audit

EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_VERIFY = 3


def _point(text: str):
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'x,y', got {text!r}") from None
    return (x, y)


def _floats(text: str):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _load(args):
    return load_scene(args.scene, tol=args.tolerance)


def _terminals(args, scene):
    s = args.s if args.s is not None else (scene.query.s if scene.query else None)
    t = args.t if args.t is not None else (scene.query.t if scene.query else None)
    if s is None or t is None:
        raise SceneError("give --s and --t or a query in the scene file")
    validate(list(scene.disks), query=QueryPoints(Point(*s), Point(*t)), tol=scene.tol)
    return s, t


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _path_output(args, scene, path, nodes=()):
    if args.format == "svg":
        _emit(render_svg(scene, path, nodes, terminals=[args.s_used, args.t_used]), args.out)
    else:
        _emit(json.dumps(path.to_json(), indent=2) + "\n", args.out)


def cmd_route(args) -> int:
    scene = _load(args)
    s, t = _terminals(args, scene)
    args.s_used, args.t_used = s, t
    path, g = route(scene, s, t, args.epsilon)
    _path_output(args, scene, path, node_points(scene, g.nodes))
    return 0


def cmd_exact(args) -> int:
    scene = _load(args)
    s, t = _terminals(args, scene)
    args.s_used, args.t_used = s, t
    path = exact_path(scene, s, t)
    _path_output(args, scene, path)
    return 0


def cmd_discretize(args) -> int:
    scene = _load(args)
    steiner = build_steiner_set(scene, args.epsilon)
    _emit(json.dumps(steiner.to_json()) + "\n", args.out)
    if args.svg:
        Path(args.svg).write_text(render_svg(scene, None, node_points(scene, steiner.nodes)), encoding="utf-8")
    return 0


def cmd_spanner(args) -> int:
    scene = _load(args)
    steiner = build_steiner_set(scene, args.epsilon)
    g = PathGraph(scene, steiner.nodes, args.epsilon)
    yao = build_yao(scene, g, args.k)
    doc = yao.to_json()
    doc["ratio"] = spanning_audit(yao, g)
    doc["bound"] = spanner_bound(args.k)
    _emit(json.dumps(doc) + "\n", args.out)
    return 0


def cmd_render(args) -> int:
    scene = _load(args)
    nodes = []
    path = None
    terms = []
    if args.epsilon is not None:
        steiner = build_steiner_set(scene, args.epsilon)
        nodes = node_points(scene, steiner.nodes)
        if args.s is not None and args.t is not None:
            s, t = _terminals(args, scene)
            path, _ = route(scene, s, t, args.epsilon, steiner)
            terms = [s, t]
    _emit(render_svg(scene, path, nodes, terminals=terms), args.out)
    if args.figure:
        figure_scene(scene, args.figure, path, nodes)
    return 0


def _csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("%.10g" % v if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def cmd_bench(args) -> int:
    scene = _load(args)
    rows = []
    for eps in args.epsilons:
        t0 = time.perf_counter()
        steiner = build_steiner_set(scene, eps)
        build_s = time.perf_counter() - t0
        pred = predicted_counts(scene, eps)
        per_disk = [len(steiner.on_disk(i)) for i in range(scene.n)]
        row = {"epsilon": eps, "nodes": len(steiner), "edges": len(steiner) * (len(steiner) - 1) // 2,
               "total_bound": pred["total_bound"], "build_s": build_s,
               "max_disk_nodes": max(per_disk),
               "max_disk_bound": max((p["disk_bound"] for p in pred["per_disk"]), default=math.nan)}
        if scene.query is not None:
            t0 = time.perf_counter()
            path, _ = route(scene, scene.query.s, scene.query.t, eps, steiner)
            row["route_s"] = time.perf_counter() - t0
            row["weight"] = path.total_weight
        rows.append(row)
    fields = ["epsilon", "nodes", "edges", "total_bound", "max_disk_nodes", "max_disk_bound", "build_s",
              "route_s", "weight"]
    text = _csv(rows, fields)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "bench.csv").write_text(text, encoding="utf-8")
        figure_bench(rows, out / "bench.png")
    sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    from .suite import run_matrix

    rows = [r.as_dict() for r in run_matrix(quick=args.quick, seed=args.seed)]
    text = _csv(rows, ["case", "epsilon", "ratio", "bound", "ok"])
    sys.stdout.write(text)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "verify.csv").write_text(text, encoding="utf-8")
        figure_verify(rows, out / "verify.png")
    bad = [r for r in rows if not r["ok"]]
    if bad:
        sys.stderr.write(f"{len(bad)} of {len(rows)} checks failed\n")
        return EXIT_VERIFY
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diskpath", description=__doc__.splitlines()[0])
    p.add_argument("--tolerance", type=float, default=None, help="absolute geometric tolerance")
    sub = p.add_subparsers(dest="command", required=True)

    def scene_arg(q):
        q.add_argument("--scene", required=True, help="scene JSON file")

    for name, fn in (("route", cmd_route), ("exact-obstacles", cmd_exact)):
        q = sub.add_parser(name)
        scene_arg(q)
        if name == "route":
            q.add_argument("--epsilon", type=float, required=True)
        q.add_argument("--s", type=_point)
        q.add_argument("--t", type=_point)
        q.add_argument("--out")
        q.add_argument("--format", choices=("json", "svg"), default="json")
        q.set_defaults(func=fn)

    q = sub.add_parser("discretize")
    scene_arg(q)
    q.add_argument("--epsilon", type=float, required=True)
    q.add_argument("--out")
    q.add_argument("--svg", help="also write an SVG overlay here")
    q.set_defaults(func=cmd_discretize)

    q = sub.add_parser("spanner")
    scene_arg(q)
    q.add_argument("--epsilon", type=float, required=True)
    q.add_argument("--k", type=int, default=4)
    q.add_argument("--out")
    q.set_defaults(func=cmd_spanner)

    q = sub.add_parser("render")
    scene_arg(q)
    q.add_argument("--epsilon", type=float)
    q.add_argument("--s", type=_point)
    q.add_argument("--t", type=_point)
    q.add_argument("--out")
    q.add_argument("--figure", help="also save a matplotlib PNG here")
    q.set_defaults(func=cmd_render)

    q = sub.add_parser("bench")
    scene_arg(q)
    q.add_argument("--epsilons", type=_floats, default=[1.0, 0.5, 0.25])
    q.add_argument("--out-dir")
    q.set_defaults(func=cmd_bench)

    q = sub.add_parser("verify")
    q.add_argument("--quick", action="store_true")
    q.add_argument("--seed", type=int, default=2024)
    q.add_argument("--out-dir")
    q.set_defaults(func=cmd_verify)
    return p


def _glue_points(argv: list[str]) -> list[str]:
    """Let ``--s -3,0`` through: argparse would read ``-3,0`` as an option."""
    out = []
    it = iter(range(len(argv)))
    for i in it:
        a = argv[i]
        if a in ("--s", "--t") and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(a)
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(_glue_points(argv))
    try:
        return args.func(args)
    except SceneParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except (SceneError, TerminalInsideObstacle, MixedWeightError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
