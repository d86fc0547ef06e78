"""Randomized end-to-end check of the tree against the brute-force oracle.

Also re-verifies the structural bounds on every instance. Everything is
driven by one seeded ``random.Random`` so a run is reproducible.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .dataset import random_rects
from .geometry import Point, Rect
from .oracle import oracle_cover_check, oracle_intersect, oracle_stab
from .unified import UnifiedSegmentTree

POINTS_PER_INSTANCE = 50
PER_UNIT_ANCESTOR_LIMIT = 16


def piece_bound(x_levels: int, y_levels: int) -> int:
    # a one-slab axis still needs one piece
    return max(2 * x_levels, 1) * max(2 * y_levels, 1)


@dataclass
class InstanceFailure:
    index: int
    check: str
    detail: str
    rects: list[Rect]

    def as_dict(self) -> dict:
        return {
            "instance": self.index,
            "check": self.check,
            "detail": self.detail,
            "rects": [list(r.as_tuple()) for r in self.rects],
        }


@dataclass
class SelfCheckReport:
    instances: int = 0
    rect_queries: int = 0
    point_queries: int = 0
    structural_checks: int = 0
    max_unit_ancestors: int = 0
    max_pieces: int = 0
    failures: list[InstanceFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "instances": self.instances,
            "rect_queries": self.rect_queries,
            "point_queries": self.point_queries,
            "structural_checks": self.structural_checks,
            "max_unit_ancestors": self.max_unit_ancestors,
            "max_pieces": self.max_pieces,
            "failures": len(self.failures),
            "counterexample": self.failures[0].as_dict() if self.failures else None,
        }


def drop_id(tree: UnifiedSegmentTree, rid: int) -> None:
    """Fault injection: erase ``rid`` from every node list, keep it registered."""
    for table in (tree._here, tree._desc, tree._xdesc, tree._ydesc):
        for ids in table.values():
            if rid in ids:
                ids.remove(rid)


def probe_points(rng: random.Random, rects: list[Rect], count: int) -> list[Point]:
    """Mix of endpoint hits, interior points and points outside the grid."""
    if not rects:
        return [Point(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(count)]
    xs = sorted({c for r in rects for c in (r.min_x, r.max_x)})
    ys = sorted({c for r in rects for c in (r.min_y, r.max_y)})
    pts = []
    for k in range(count):
        mode = k % 3
        if mode == 0:
            pts.append(Point(rng.choice(xs), rng.choice(ys)))
        elif mode == 1:
            pts.append(Point(rng.randint(xs[0], xs[-1]), rng.randint(ys[0], ys[-1])))
        else:
            pts.append(Point(rng.randint(xs[0] - 3, xs[-1] + 3), rng.randint(ys[0] - 3, ys[-1] + 3)))
    return pts


def check_structure(tree: UnifiedSegmentTree, report: SelfCheckReport) -> list[tuple[str, str]]:
    problems = [("invariants", p) for p in tree.check_invariants()]
    bound = piece_bound(tree.x_levels, tree.y_levels)
    for r in tree.rects.values():
        xy = tree.canonical_pieces(r, "xy")
        yx = tree.canonical_pieces(r, "yx")
        if set(xy) != set(yx):
            problems.append(("order", f"rect {r.id}: xy and yx pieces differ"))
        if len(xy) > bound:
            problems.append(("pieces", f"rect {r.id}: {len(xy)} pieces > {bound}"))
        if not oracle_cover_check(xy, tree.rank_region(r), tree.x_levels, tree.y_levels):
            problems.append(("cover", f"rect {r.id}: pieces do not tile its rank region"))
        per_unit = Counter(a.unit for a in tree.strict_ancestor_set(r))
        worst = max(per_unit.values(), default=0)
        report.max_unit_ancestors = max(report.max_unit_ancestors, worst)
        report.max_pieces = max(report.max_pieces, len(xy))
        if worst > PER_UNIT_ANCESTOR_LIMIT:
            problems.append(("ancestors", f"rect {r.id}: {worst} ancestors in one unit"))
        report.structural_checks += 5
    return problems


def instance_stream(seed: int, instances: int, max_n: int, grid: int):
    """Yield ``(index, rects, probe points)`` for each seeded random instance.

    Corners come from at most ``grid`` values per axis, so endpoints are
    heavily shared.
    """
    rng = random.Random(seed)
    for i in range(instances):
        n = rng.randint(1, max_n)
        g = rng.randint(2, grid)
        rects = random_rects(rng, n, g)
        yield i, rects, probe_points(rng, rects, POINTS_PER_INSTANCE)


def run_selfcheck(
    instances: int,
    max_n: int,
    grid: int,
    seed: int,
    fault: bool = False,
    stop_at_first: bool = True,
) -> SelfCheckReport:
    if instances < 0 or max_n < 1 or grid < 2:
        raise ValueError("instances must be >= 0, max_n >= 1 and grid >= 2")
    report = SelfCheckReport()
    for i, rects, points in instance_stream(seed, instances, max_n, grid):
        tree = UnifiedSegmentTree.build(rects)
        if fault:
            drop_id(tree, rects[0].id)
        report.instances += 1

        problems = check_structure(tree, report)
        for q in rects:
            report.rect_queries += 1
            got = tree.intersect_query(q)
            want = oracle_intersect(rects, q)
            if got != want:
                problems.append(("intersect", f"query {q.as_tuple()}: got {got}, want {want}"))
                break
        for p in points:
            report.point_queries += 1
            got = tree.stab(p)
            want = oracle_stab(rects, p)
            if got != want:
                problems.append(("stab", f"point {tuple(p)}: got {got}, want {want}"))
                break

        report.failures.extend(InstanceFailure(i, c, d, rects) for c, d in problems)
        if report.failures and stop_at_first:
            break
    return report
