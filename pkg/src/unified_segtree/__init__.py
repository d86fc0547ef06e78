"""Two-dimensional unified segment tree: rectangle stabbing and intersection queries."""

from .geometry import (
    CoordinateMap,
    DegenerateRect,
    DuplicateId,
    GeometryError,
    IntersectionKind,
    Point,
    RankInterval,
    Rect,
    UnregisteredEndpoint,
    build_coordinate_map,
    classify_intersection,
    rank_interval,
    rects_overlap,
    slab_of,
)
from .oracle import oracle_cover_check, oracle_intersect, oracle_stab
from .seg1d import DyadicNode1D, ancestors_1d, canonical_cover_1d, stab_path_1d
from .unified import (
    DyadicAddress,
    NodeRecord,
    UnifiedSegmentTree,
    ancestors,
    build,
    crossing,
    is_descendant,
    x_children,
    x_parent,
    y_children,
    y_parent,
)

__version__ = "0.1.0"
