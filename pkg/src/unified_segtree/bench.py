"""Micro-benchmarks. Timings are observed and reported, never asserted."""

from __future__ import annotations

import random
import statistics
import time

from .dataset import sized_rects
from .geometry import Point, Rect
from .unified import UnifiedSegmentTree


def node_bound(n: int, x_levels: int, y_levels: int) -> int:
    return 16 * n * max(2 * x_levels, 1) * max(2 * y_levels, 1)


def _p99(samples: list[float]) -> float:
    if not samples:
        return 0.0
    ordered = sorted(samples)
    return ordered[min(len(ordered) - 1, int(0.99 * len(ordered)))]


def bench(rects: list[Rect], queries: int, seed: int) -> dict:
    if queries < 1:
        raise ValueError("queries must be positive")
    rng = random.Random(seed)
    t0 = time.perf_counter()
    tree = UnifiedSegmentTree.build(rects)
    build_s = time.perf_counter() - t0
    stats = tree.stats()

    stab_us, rect_us, ks = [], [], []
    if rects:
        xs, ys = tree.cmap.x.endpoints, tree.cmap.y.endpoints
        points = [Point(rng.randint(xs[0], xs[-1]), rng.randint(ys[0], ys[-1])) for _ in range(queries)]
        boxes = [rng.choice(rects) for _ in range(queries)]
        for p in points:
            t = time.perf_counter()
            tree.stab(p)
            stab_us.append((time.perf_counter() - t) * 1e6)
        for q in boxes:
            t = time.perf_counter()
            found = tree.intersect_query(q)
            rect_us.append((time.perf_counter() - t) * 1e6)
            ks.append(len(found))

    def mean(v):
        return statistics.fmean(v) if v else 0.0

    return {
        "n": len(rects),
        "queries": queries,
        "seed": seed,
        "build_ms": round(build_s * 1e3, 3),
        "nodes": stats.nodes,
        "node_bound": node_bound(len(rects), tree.x_levels, tree.y_levels),
        "x_levels": tree.x_levels,
        "y_levels": tree.y_levels,
        "stab_mean_us": round(mean(stab_us), 3),
        "stab_p99_us": round(_p99(stab_us), 3),
        "rectq_mean_us": round(mean(rect_us), 3),
        "rectq_p99_us": round(_p99(rect_us), 3),
        "rectq_mean_k": round(mean(ks), 3),
    }


def scaling(sizes=(2**10, 2**12, 2**14), queries: int = 500, seed: int = 0) -> list[dict]:
    """Bench on random rects of growing count over a fixed 1024x1024 grid."""
    rows = []
    for n in sizes:
        rects = sized_rects(random.Random(seed + n), n)
        rows.append(bench(rects, queries, seed))
    return rows
