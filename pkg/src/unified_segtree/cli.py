"""Command-line front end.

Every command reads a CSV of rectangles (header ``id,minx,miny,maxx,maxy``),
builds the tree from scratch and writes one JSON object per line to stdout.

Exit codes: 0 success, 1 input or usage error, 2 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .bench import bench
from .dataset import DatasetError, load_csv
from .geometry import GeometryError, Point, Rect, rects_overlap
from .render import render_svg
from .selfcheck import run_selfcheck
from .unified import UnifiedSegmentTree

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits 2 by default; 2 is reserved for invariant failures
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj, sort_keys=False) + "\n")


def _load_tree(path: str) -> tuple[list[Rect], UnifiedSegmentTree]:
    ds = load_csv(path)
    return ds.rects, UnifiedSegmentTree.build(ds.rects)


def _result(query: dict, ids: list[int], micros: float) -> dict:
    return {"query": query, "ids": ids, "count": len(ids), "micros": round(micros, 3)}


def cmd_stats(args, out) -> int:
    _, tree = _load_tree(args.input)
    _emit(tree.stats().as_dict(), out)
    return EXIT_OK


def cmd_stab(args, out) -> int:
    _, tree = _load_tree(args.input)
    p = Point(args.x, args.y)
    t = time.perf_counter()
    ids = tree.stab(p)
    _emit(_result({"x": p.x, "y": p.y}, ids, (time.perf_counter() - t) * 1e6), out)
    return EXIT_OK


def snap_outward(tree: UnifiedSegmentTree, q: Rect) -> Rect | None:
    """Grow ``q`` to the nearest registered endpoints.

    Returns None when ``q`` cannot overlap the registered grid at all.
    """
    snapped = []
    for axis, (lo, hi) in (("x", q.side("x")), ("y", q.side("y"))):
        amap = tree.cmap.axis(axis)
        if not amap.endpoints or hi <= amap.endpoints[0] or lo >= amap.endpoints[-1]:
            return None
        new_lo = amap.snap_down(lo)
        new_hi = amap.snap_up(hi)
        snapped.append((amap.endpoints[0] if new_lo is None else new_lo, amap.endpoints[-1] if new_hi is None else new_hi))
    (x0, x1), (y0, y1) = snapped
    return Rect(q.id, x0, y0, x1, y1)


def cmd_rectq(args, out) -> int:
    _, tree = _load_tree(args.input)
    q = Rect(0, args.minx, args.miny, args.maxx, args.maxy)
    echo = {"minx": q.min_x, "miny": q.min_y, "maxx": q.max_x, "maxy": q.max_y}
    t = time.perf_counter()
    if args.snap:
        eff = snap_outward(tree, q)
        if eff is None:
            ids = []
        else:
            echo["effective"] = {"minx": eff.min_x, "miny": eff.min_y, "maxx": eff.max_x, "maxy": eff.max_y}
            candidates = tree.intersect_query(eff)
            # outward snapping only adds candidates; the exact test removes them again
            ids = [i for i in candidates if rects_overlap(tree.rects[i], q)]
    else:
        ids = tree.intersect_query(q)
    _emit(_result(echo, ids, (time.perf_counter() - t) * 1e6), out)
    return EXIT_OK


def cmd_selfcheck(args, out) -> int:
    report = run_selfcheck(args.instances, args.max_n, args.grid, args.seed, fault=args.inject_fault)
    summary = report.as_dict()
    summary["seed"] = args.seed
    _emit(summary, out)
    return EXIT_OK if report.passed else EXIT_INVARIANT


def cmd_render(args, out) -> int:
    _, tree = _load_tree(args.input)
    svg = render_svg(tree.stats())
    Path(args.out).write_text(svg + "\n", encoding="utf-8")
    _emit({"out": str(args.out), "units": (tree.x_levels + 1) * (tree.y_levels + 1)}, out)
    return EXIT_OK


def cmd_bench(args, out) -> int:
    ds = load_csv(args.input)
    _emit(bench(ds.rects, args.queries, args.seed), out)
    return EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _non_negative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unified-segtree", description="2D unified segment tree queries over a CSV of rectangles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", help="structural report per diamond unit")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("stab", help="rects containing a point")
    p.add_argument("--input", required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.set_defaults(func=cmd_stab)

    p = sub.add_parser("rectq", help="rects sharing area with a query rect")
    p.add_argument("--input", required=True)
    for name in ("minx", "miny", "maxx", "maxy"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--snap", action="store_true", help="grow unregistered query endpoints outward")
    p.set_defaults(func=cmd_rectq)

    p = sub.add_parser("selfcheck", help="randomized comparison against the brute-force oracle")
    p.add_argument("--instances", type=_non_negative, default=200)
    p.add_argument("--max-n", type=_positive, default=64)
    p.add_argument("--grid", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selfcheck)

    p = sub.add_parser("render", help="SVG diamond of per-unit node counts")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="build and query latency")
    p.add_argument("--input", required=True)
    p.add_argument("--queries", type=_positive, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = make_parser().parse_args(argv)
    if args.command == "selfcheck" and args.grid < 2:
        print("error: --grid must be at least 2", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except DatasetError as e:
        print(f"error: {args.input}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (GeometryError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
