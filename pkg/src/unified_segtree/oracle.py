"""Brute-force reference answers. O(n) per query on purpose."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .geometry import CoordinateMap, Point, RankInterval, Rect, build_coordinate_map, rects_overlap, validate_rects


@dataclass
class OracleInstance:
    rects: list[Rect]
    cmap: CoordinateMap = field(init=False)

    def __post_init__(self) -> None:
        self.rects = validate_rects(self.rects)
        self.cmap = build_coordinate_map(self.rects)


def oracle_stab(rects: Iterable[Rect], p: Point) -> list[int]:
    return sorted(r.id for r in rects if r.contains(p))


def oracle_intersect(rects: Iterable[Rect], q: Rect) -> list[int]:
    return sorted(r.id for r in rects if rects_overlap(r, q))


def oracle_cover_check(
    pieces: Sequence, region: tuple[RankInterval, RankInterval], x_levels: int, y_levels: int
) -> bool:
    """Every cell of ``region`` lies in exactly one piece, and no piece leaks out.

    ``pieces`` are dyadic addresses ``(xl, xi, yl, yi)``. Cells are enumerated
    one by one, so keep universes small.
    """
    (xlo, xhi), (ylo, yhi) = region
    counts: dict[tuple[int, int], int] = {}
    for xl, xi, yl, yi in pieces:
        wx = 1 << (x_levels - xl)
        wy = 1 << (y_levels - yl)
        for cx in range(xi * wx, (xi + 1) * wx):
            for cy in range(yi * wy, (yi + 1) * wy):
                if not (xlo <= cx < xhi and ylo <= cy < yhi):
                    return False
                counts[cx, cy] = counts.get((cx, cy), 0) + 1
    for cx in range(xlo, xhi):
        for cy in range(ylo, yhi):
            if counts.get((cx, cy)) != 1:
                return False
    return True
