"""Exit criteria for the package. One PASS/FAIL line per criterion is printed
in the terminal summary (see ``conftest.pytest_terminal_summary``).

Every bound is pinned here; none is tuned after the fact.
"""

import contextlib
import io
import itertools
import json
import random
import time
import xml.etree.ElementTree as ET
from collections import Counter

import pytest

from unified_segtree.bench import node_bound, scaling
from unified_segtree.cli import main
from unified_segtree.dataset import random_rects
from unified_segtree.geometry import IntersectionKind, RankInterval, Rect, classify_intersection
from unified_segtree.oracle import oracle_cover_check, oracle_intersect, oracle_stab
from unified_segtree.seg1d import DyadicNode1D, ancestors_1d, canonical_cover_1d, stab_path_1d
from unified_segtree.selfcheck import instance_stream, piece_bound
from unified_segtree.unified import (
    UnifiedSegmentTree,
    all_addresses,
    ancestors,
    crossing,
    is_descendant,
    x_ancestors,
    y_ancestors,
)

SEED = 20240501
INSTANCES = 200
MAX_N = 64
GRID = 12
POINTS = 50

C1_SECONDS = 10.0
C2_SECONDS = 5.0
C5_SECONDS = 5.0
PER_UNIT_LIMIT = 16
APPENDIX_MAX_L = 6
UNIT_CHECK_MAX_L = 5
THEOREM_L = 3
ORDER_RECTS = 1000
SCALING_SIZES = (2**10, 2**12, 2**14)


@pytest.fixture(scope="module")
def instances():
    out = []
    for _, rects, points in instance_stream(SEED, INSTANCES, MAX_N, GRID):
        out.append((rects, points, UnifiedSegmentTree.build(rects)))
    return out


def test_c1_intersection_matches_oracle(instances, acceptance):
    mismatches = 0
    queries = 0
    t0 = time.perf_counter()
    for rects, _, tree in instances:
        for q in rects:
            queries += 1
            if set(tree.intersect_query(q)) != set(oracle_intersect(rects, q)):
                mismatches += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < C1_SECONDS
    acceptance("C1 oracle equivalence (intersection)", ok,
               f"{queries} queries, {mismatches} mismatches, {elapsed:.2f}s < {C1_SECONDS}s")
    assert mismatches == 0
    assert elapsed < C1_SECONDS


def test_c2_stab_matches_oracle(instances, acceptance):
    mismatches = 0
    queries = 0
    outside = on_endpoint = 0
    t0 = time.perf_counter()
    for rects, points, tree in instances:
        assert len(points) == POINTS
        xs = {c for r in rects for c in (r.min_x, r.max_x)}
        for p in points:
            queries += 1
            outside += not (min(xs) <= p.x < max(xs))
            on_endpoint += p.x in xs
            if tree.stab(p) != oracle_stab(rects, p):
                mismatches += 1
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and elapsed < C2_SECONDS and outside > 0 and on_endpoint > 0
    acceptance("C2 oracle equivalence (stabbing)", ok,
               f"{queries} points ({on_endpoint} on endpoints, {outside} outside), "
               f"{mismatches} mismatches, {elapsed:.2f}s < {C2_SECONDS}s")
    assert mismatches == 0
    assert outside > 0 and on_endpoint > 0
    assert elapsed < C2_SECONDS


def test_c3_appendix_properties(acceptance):
    violations = Counter()
    for levels in range(APPENDIX_MAX_L + 1):
        size = 1 << levels
        for slab in range(size):
            if len(stab_path_1d(slab, levels)) != levels + 1:
                violations["height"] += 1
        for lo, hi in itertools.combinations(range(size + 1), 2):
            cover = canonical_cover_1d(RankInterval(lo, hi), levels)
            if max(Counter(n.level for n in cover).values()) > 2:
                violations["two-per-level"] += 1
            if len(cover) > max(2 * levels, 1):
                violations["cover-size"] += 1
            anc = {a for n in cover for a in ancestors_1d(n)}
            if anc and max(Counter(a.level for a in anc).values()) > 4:
                violations["four-ancestors-per-level"] += 1
            cells = sorted(c for n in cover for c in range(*n.interval(levels)))
            if cells != list(range(lo, hi)):
                violations["exact-cover"] += 1
    levels = APPENDIX_MAX_L
    nodes = [DyadicNode1D(l, i).interval(levels) for l in range(levels + 1) for i in range(1 << l)]
    for (alo, ahi), (blo, bhi) in itertools.product(nodes, repeat=2):
        if alo < blo < ahi < bhi:
            violations["partial-overlap"] += 1
    total = sum(violations.values())
    acceptance("C3 appendix property suite (L<=6)", total == 0,
               f"{total} violations {dict(violations) or ''}".strip())
    assert total == 0, violations


def test_c4_unified_structure(instances, acceptance):
    violations = Counter()
    for a in all_addresses(UNIT_CHECK_MAX_L, UNIT_CHECK_MAX_L):
        anc = ancestors(a, include_self=True)
        units = Counter(x.unit for x in anc)
        if len(units) != (a.xl + 1) * (a.yl + 1) or max(units.values()) != 1:
            violations["one-per-unit"] += 1
        for x in anc:
            if not is_descendant(a, x):
                violations["one-per-unit"] += 1
    worst_unit = worst_pieces = 0
    for rects, _, tree in instances:
        bound = piece_bound(tree.x_levels, tree.y_levels)
        for r in rects:
            per_unit = Counter(x.unit for x in tree.strict_ancestor_set(r))
            worst_unit = max(worst_unit, max(per_unit.values(), default=0))
            if max(per_unit.values(), default=0) > PER_UNIT_LIMIT:
                violations["sixteen-per-unit"] += 1
            n_pieces = len(tree.canonical_pieces(r))
            worst_pieces = max(worst_pieces, n_pieces)
            if n_pieces > bound:
                violations["pieces-bound"] += 1
        if tree.check_invariants():
            violations["list-containment"] += 1
    total = sum(violations.values())
    acceptance("C4 unified structural suite", total == 0,
               f"{total} violations; max ancestors in one unit {worst_unit} <= {PER_UNIT_LIMIT}; "
               f"max pieces {worst_pieces}")
    assert total == 0, violations


def _region_rect(addr, levels, rid):
    (x0, x1), (y0, y1) = addr.region(levels, levels)
    return Rect(rid, x0, y0, x1, y1)


def test_c5_theorems(acceptance):
    levels = THEOREM_L
    addrs = list(all_addresses(levels, levels))
    cells = {}
    for a in addrs:
        r = _region_rect(a, levels, 0)
        cells[a] = {(x, y) for x in range(r.min_x, r.max_x) for y in range(r.min_y, r.max_y)}
    xself = {a: set(x_ancestors(a)) | {a} for a in addrs}
    yself = {a: set(y_ancestors(a)) | {a} for a in addrs}
    violations = Counter()
    pairs = 0
    t0 = time.perf_counter()
    for a, b in itertools.product(addrs, repeat=2):
        pairs += 1
        if is_descendant(a, b) != (cells[a] <= cells[b]):
            violations["containment"] += 1
        nested = cells[a] <= cells[b] or cells[b] <= cells[a]
        common = bool(xself[a] & yself[b]) or bool(xself[b] & yself[a])
        if crossing(a, b) != (common and not nested):
            violations["crossing"] += 1
        kind = classify_intersection(_region_rect(a, levels, 0), _region_rect(b, levels, 1))
        if kind is IntersectionKind.PARTIAL:
            violations["partial"] += 1
    elapsed = time.perf_counter() - t0
    total = sum(violations.values())
    acceptance("C5 theorem suite (L=3, all pairs)", total == 0 and elapsed < C5_SECONDS,
               f"{pairs} pairs, {total} violations, {elapsed:.2f}s < {C5_SECONDS}s")
    assert total == 0, violations
    assert elapsed < C5_SECONDS


def test_c6_order_invariance(acceptance):
    rng = random.Random(SEED)
    rects = random_rects(rng, ORDER_RECTS, 40, span=200)
    tree = UnifiedSegmentTree.build(rects)
    differ = bad_cover = 0
    for r in rects:
        xy = tree.canonical_pieces(r, "xy")
        if set(xy) != set(tree.canonical_pieces(r, "yx")):
            differ += 1
        if not oracle_cover_check(xy, tree.rank_region(r), tree.x_levels, tree.y_levels):
            bad_cover += 1
    ok = differ == 0 and bad_cover == 0
    acceptance("C6 order invariance (1000 rects)", ok,
               f"{differ} xy/yx differences, {bad_cover} cover failures")
    assert ok


def test_c7_asymptotic_sanity(acceptance):
    rows = scaling(SCALING_SIZES, queries=300, seed=SEED)
    for row in rows:
        acceptance.log(json.dumps(row))
    over = [r for r in rows if r["nodes"] >= node_bound(r["n"], r["x_levels"], r["y_levels"])]
    growth = rows[-1]["rectq_mean_us"] / rows[0]["rectq_mean_us"]
    acceptance("C7 asymptotic sanity (node bound)", not over,
               f"nodes {[r['nodes'] for r in rows]} below 16n(2Lx)(2Ly); "
               f"rectq mean grows x{growth:.2f} while n grows x{rows[-1]['n'] // rows[0]['n']} "
               f"and mean k grows x{rows[-1]['rectq_mean_k'] / max(rows[0]['rectq_mean_k'], 1):.1f} "
               "(latency logged, not asserted)")
    assert not over


def test_c8_cli_contract(tmp_path, acceptance):
    argv = ["selfcheck", "--instances", "40", "--max-n", "64", "--grid", "12", "--seed", str(SEED)]
    runs = []
    for _ in range(2):
        out = io.StringIO()
        code = main(argv, out=out)
        runs.append((code, out.getvalue()))
    identical = runs[0] == runs[1] and runs[0][0] == 0

    rects = [Rect(0, 0, 0, 8, 3), Rect(1, 1, 1, 5, 2), Rect(2, 3, 0, 7, 3), Rect(3, 2, 1, 6, 3)]
    src = tmp_path / "r.csv"
    src.write_text("id,minx,miny,maxx,maxy\n" + "".join(",".join(map(str, r.as_tuple())) + "\n" for r in rects))
    svg = tmp_path / "r.svg"
    tree = UnifiedSegmentTree.build(rects)
    assert main(["render", "--input", str(src), "--out", str(svg)], out=io.StringIO()) == 0
    root = ET.parse(svg).getroot()
    n_cells = sum(1 for g in root.iter("{http://www.w3.org/2000/svg}g") if g.get("class") == "unit")
    want_cells = (tree.x_levels + 1) * (tree.y_levels + 1)

    bad = tmp_path / "bad.csv"
    bad.write_text("id,minx,miny,maxx,maxy\n0,0,0,1,1\n1,0,zero,1,1\n")
    err = io.StringIO()
    with contextlib.redirect_stderr(err):
        bad_code = main(["stats", "--input", str(bad)], out=io.StringIO())
    line_numbered = "line 3" in err.getvalue()

    ok = identical and n_cells == want_cells and bad_code == 1 and line_numbered
    acceptance("C8 CLI contract", ok,
               f"selfcheck identical={identical}; svg cells {n_cells}/{want_cells} "
               f"(L_x={tree.x_levels}, L_y={tree.y_levels}); malformed csv exit {bad_code}, line-numbered={line_numbered}")
    assert identical
    assert n_cells == want_cells
    assert bad_code == 1 and line_numbered
