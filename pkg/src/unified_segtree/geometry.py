"""Rectangles, points, endpoint compression and the overlap classifier.

All coordinates are integers. Rectangles are half-open on both axes, so two
rectangles "intersect" only when they share positive area; touching edges do
not count.
"""

from __future__ import annotations

import bisect
import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class GeometryError(ValueError):
    """Base class for invalid geometric input."""


class DegenerateRect(GeometryError):
    pass


class DuplicateId(GeometryError):
    pass


class UnregisteredEndpoint(GeometryError):
    """A coordinate that is not one of the axis endpoints fixed at build time."""


def _check_int64(value: int, what: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise GeometryError(f"{what} must be an integer, got {value!r}")
    if not INT64_MIN <= value <= INT64_MAX:
        raise GeometryError(f"{what}={value} does not fit in a signed 64-bit integer")


class Point(NamedTuple):
    x: int
    y: int


@dataclass(frozen=True)
class Rect:
    id: int
    min_x: int
    min_y: int
    max_x: int
    max_y: int

    def __post_init__(self) -> None:
        if not isinstance(self.id, int) or self.id < 0:
            raise GeometryError(f"rect id must be a non-negative integer, got {self.id!r}")
        for name in ("min_x", "min_y", "max_x", "max_y"):
            _check_int64(getattr(self, name), name)
        if self.min_x >= self.max_x or self.min_y >= self.max_y:
            raise DegenerateRect(
                f"rect {self.id} has zero width or height: "
                f"({self.min_x},{self.min_y},{self.max_x},{self.max_y})"
            )

    def side(self, axis: str) -> tuple[int, int]:
        if axis == "x":
            return self.min_x, self.max_x
        if axis == "y":
            return self.min_y, self.max_y
        raise ValueError(f"unknown axis {axis!r}")

    def contains(self, p: Point) -> bool:
        return self.min_x <= p.x < self.max_x and self.min_y <= p.y < self.max_y

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.id, self.min_x, self.min_y, self.max_x, self.max_y)


class RankInterval(NamedTuple):
    """Half-open slab range ``[lo, hi)``."""

    lo: int
    hi: int


@dataclass(frozen=True)
class AxisMap:
    endpoints: tuple[int, ...]

    @property
    def slabs(self) -> int:
        return max(len(self.endpoints) - 1, 0)

    @property
    def levels(self) -> int:
        # smallest L with 2**L >= slabs
        return (max(self.slabs, 1) - 1).bit_length()

    @property
    def size(self) -> int:
        return 1 << self.levels

    def slab_of(self, coord: int) -> Optional[int]:
        k = bisect.bisect_right(self.endpoints, coord) - 1
        if k < 0 or k >= self.slabs:
            return None
        return k

    def rank(self, coord: int) -> int:
        k = bisect.bisect_left(self.endpoints, coord)
        if k == len(self.endpoints) or self.endpoints[k] != coord:
            raise UnregisteredEndpoint(f"coordinate {coord} is not a registered endpoint")
        return k

    def snap_down(self, coord: int) -> Optional[int]:
        """Largest endpoint <= coord."""
        k = bisect.bisect_right(self.endpoints, coord) - 1
        return self.endpoints[k] if k >= 0 else None

    def snap_up(self, coord: int) -> Optional[int]:
        """Smallest endpoint >= coord."""
        k = bisect.bisect_left(self.endpoints, coord)
        return self.endpoints[k] if k < len(self.endpoints) else None


@dataclass(frozen=True)
class CoordinateMap:
    x: AxisMap
    y: AxisMap

    def axis(self, name: str) -> AxisMap:
        if name == "x":
            return self.x
        if name == "y":
            return self.y
        raise ValueError(f"unknown axis {name!r}")


def validate_rects(rects: Iterable[Rect]) -> list[Rect]:
    rects = list(rects)
    seen: set[int] = set()
    for r in rects:
        if not isinstance(r, Rect):
            raise GeometryError(f"expected Rect, got {type(r).__name__}")
        if r.id in seen:
            raise DuplicateId(f"duplicate rect id {r.id}")
        seen.add(r.id)
    return rects


def build_coordinate_map(rects: Iterable[Rect]) -> CoordinateMap:
    """Collect the distinct endpoints of ``rects`` on each axis.

    An empty input gives an empty map: no slabs, one phantom slab of padding.
    """
    rects = validate_rects(rects)
    xs = sorted({c for r in rects for c in (r.min_x, r.max_x)})
    ys = sorted({c for r in rects for c in (r.min_y, r.max_y)})
    return CoordinateMap(AxisMap(tuple(xs)), AxisMap(tuple(ys)))


def slab_of(cmap: CoordinateMap, axis: str, coord: int) -> Optional[int]:
    return cmap.axis(axis).slab_of(coord)


def rank_interval(cmap: CoordinateMap, axis: str, lo_coord: int, hi_coord: int) -> RankInterval:
    if lo_coord >= hi_coord:
        raise DegenerateRect(f"empty side [{lo_coord}, {hi_coord})")
    amap = cmap.axis(axis)
    return RankInterval(amap.rank(lo_coord), amap.rank(hi_coord))


class IntersectionKind(enum.Enum):
    DISJOINT = "Disjoint"
    EQUAL = "Equal"
    A_INSIDE_B = "AInsideB"
    B_INSIDE_A = "BInsideA"
    A_CROSSES_B = "ACrossesB"  # a is the tall one: b spans a's x extent, a spans b's y extent
    B_CROSSES_A = "BCrossesA"
    PARTIAL = "Partial"


def rects_overlap(a: Rect, b: Rect) -> bool:
    return (
        max(a.min_x, b.min_x) < min(a.max_x, b.max_x)
        and max(a.min_y, b.min_y) < min(a.max_y, b.max_y)
    )


def _within(inner: tuple[int, int], outer: tuple[int, int]) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1]


def classify_intersection(a: Rect, b: Rect) -> IntersectionKind:
    if not rects_overlap(a, b):
        return IntersectionKind.DISJOINT
    ax, ay, bx, by = a.side("x"), a.side("y"), b.side("x"), b.side("y")
    if ax == bx and ay == by:
        return IntersectionKind.EQUAL
    if _within(ax, bx) and _within(ay, by):
        return IntersectionKind.A_INSIDE_B
    if _within(bx, ax) and _within(by, ay):
        return IntersectionKind.B_INSIDE_A
    if _within(ax, bx) and _within(by, ay):
        return IntersectionKind.A_CROSSES_B
    if _within(bx, ax) and _within(ay, by):
        return IntersectionKind.B_CROSSES_A
    return IntersectionKind.PARTIAL
