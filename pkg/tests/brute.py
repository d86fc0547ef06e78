"""Independent brute-force helpers shared by the tests."""

import itertools

from unified_segtree.geometry import RankInterval
from unified_segtree.seg1d import DyadicNode1D


def brute_cover(lo, hi, levels):
    """Maximal dyadic nodes inside [lo, hi), found by scanning every node."""
    out = []
    for level in range(levels + 1):
        width = 1 << (levels - level)
        for index in range(1 << level):
            a, b = index * width, (index + 1) * width
            if not (lo <= a and b <= hi):
                continue
            if level > 0:
                pa, pb = (index >> 1) * width * 2, ((index >> 1) + 1) * width * 2
                if lo <= pa and pb <= hi:
                    continue
            out.append(DyadicNode1D(level, index))
    return sorted(out, key=lambda n: n.interval(levels).lo)


def all_intervals(levels):
    size = 1 << levels
    for lo, hi in itertools.combinations(range(size + 1), 2):
        yield RankInterval(lo, hi)
