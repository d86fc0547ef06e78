"""The two-dimensional unified segment tree.

A node is named by a dyadic address ``(x_level, x_index, y_level, y_index)``:
the product of one node of the x segment tree and one node of the y segment
tree. Since the xy- and yx-trees produce the same set of products, the merged
structure needs no explicit links; every logical node has exactly one
address and parents/children are shifts on the index.

Node data lives in four sparse tables keyed by a packed address. An address
has a record only if some write touched it, i.e. it is a canonical piece of a
stored rectangle or an ancestor of one.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple, Optional

from .geometry import (
    CoordinateMap,
    DuplicateId,
    Point,
    Rect,
    RankInterval,
    build_coordinate_map,
    rank_interval,
    validate_rects,
)
from .seg1d import DyadicNode1D, ancestor_closure, canonical_cover_1d, cover_heap_ids


class NoParent(ValueError):
    pass


class NoChild(ValueError):
    pass


class DyadicAddress(NamedTuple):
    xl: int
    xi: int
    yl: int
    yi: int

    @property
    def x(self) -> DyadicNode1D:
        return DyadicNode1D(self.xl, self.xi)

    @property
    def y(self) -> DyadicNode1D:
        return DyadicNode1D(self.yl, self.yi)

    @property
    def unit(self) -> tuple[int, int]:
        return (self.xl, self.yl)

    @classmethod
    def of(cls, x: DyadicNode1D, y: DyadicNode1D) -> "DyadicAddress":
        return cls(x.level, x.index, y.level, y.index)

    def region(self, x_levels: int, y_levels: int) -> tuple[RankInterval, RankInterval]:
        return self.x.interval(x_levels), self.y.interval(y_levels)


ROOT = DyadicAddress(0, 0, 0, 0)


def x_parent(addr: DyadicAddress) -> DyadicAddress:
    if addr.xl == 0:
        raise NoParent(f"{addr} has no x-parent")
    return DyadicAddress(addr.xl - 1, addr.xi >> 1, addr.yl, addr.yi)


def y_parent(addr: DyadicAddress) -> DyadicAddress:
    if addr.yl == 0:
        raise NoParent(f"{addr} has no y-parent")
    return DyadicAddress(addr.xl, addr.xi, addr.yl - 1, addr.yi >> 1)


def x_children(addr: DyadicAddress, x_levels: int) -> tuple[DyadicAddress, DyadicAddress]:
    if addr.xl >= x_levels:
        raise NoChild(f"{addr} is at the deepest x level {x_levels}")
    return (
        DyadicAddress(addr.xl + 1, addr.xi << 1, addr.yl, addr.yi),
        DyadicAddress(addr.xl + 1, (addr.xi << 1) | 1, addr.yl, addr.yi),
    )


def y_children(addr: DyadicAddress, y_levels: int) -> tuple[DyadicAddress, DyadicAddress]:
    if addr.yl >= y_levels:
        raise NoChild(f"{addr} is at the deepest y level {y_levels}")
    return (
        DyadicAddress(addr.xl, addr.xi, addr.yl + 1, addr.yi << 1),
        DyadicAddress(addr.xl, addr.xi, addr.yl + 1, (addr.yi << 1) | 1),
    )


def ancestors(addr: DyadicAddress, include_self: bool = False) -> list[DyadicAddress]:
    """One address per unit ``(a', b')`` with ``a' <= a`` and ``b' <= b``."""
    out = []
    for dx in range(addr.xl + 1):
        for dy in range(addr.yl + 1):
            if dx == 0 and dy == 0 and not include_self:
                continue
            out.append(DyadicAddress(addr.xl - dx, addr.xi >> dx, addr.yl - dy, addr.yi >> dy))
    return out


def x_ancestors(addr: DyadicAddress) -> list[DyadicAddress]:
    """Strict ancestors along x-parent links only."""
    return [DyadicAddress(addr.xl - k, addr.xi >> k, addr.yl, addr.yi) for k in range(1, addr.xl + 1)]


def y_ancestors(addr: DyadicAddress) -> list[DyadicAddress]:
    return [DyadicAddress(addr.xl, addr.xi, addr.yl - k, addr.yi >> k) for k in range(1, addr.yl + 1)]


def _nested_1d(inner: DyadicNode1D, outer: DyadicNode1D) -> bool:
    return outer.level <= inner.level and inner.index >> (inner.level - outer.level) == outer.index


def is_descendant(a: DyadicAddress, b: DyadicAddress) -> bool:
    """True when ``a``'s region lies inside ``b``'s. Reflexive."""
    return _nested_1d(a.x, b.x) and _nested_1d(a.y, b.y)


def crossing(a: DyadicAddress, b: DyadicAddress) -> bool:
    """True when one region spans the other's x extent and the other spans its y extent."""
    if is_descendant(a, b) or is_descendant(b, a):
        return False
    return (_nested_1d(a.x, b.x) and _nested_1d(b.y, a.y)) or (
        _nested_1d(b.x, a.x) and _nested_1d(a.y, b.y)
    )


@dataclass(frozen=True)
class NodeRecord:
    stored_here: frozenset[int] = frozenset()
    stored_in_descendants: frozenset[int] = frozenset()
    stored_in_x_descendants: frozenset[int] = frozenset()
    stored_in_y_descendants: frozenset[int] = frozenset()

    def is_empty(self) -> bool:
        return not (self.stored_here or self.stored_in_descendants)


@dataclass
class UnitStats:
    a: int
    b: int
    nodes: int = 0
    stored: int = 0


@dataclass
class TreeStats:
    nodes: int
    units: list[UnitStats]
    max_ancestors: int
    max_pieces: int
    x_levels: int
    y_levels: int
    rects: int = 0

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "units": [{"a": u.a, "b": u.b, "nodes": u.nodes, "stored": u.stored} for u in self.units],
            "max_ancestors": self.max_ancestors,
            "max_pieces": self.max_pieces,
            "x_levels": self.x_levels,
            "y_levels": self.y_levels,
            "rects": self.rects,
        }


@dataclass
class _Footprint:
    """Per-axis pieces of one rectangle, as heap ids."""

    x_cover: list[int]
    y_cover: list[int]
    x_closure: set[int] = field(init=False)
    y_closure: set[int] = field(init=False)

    def __post_init__(self) -> None:
        self.x_closure = ancestor_closure(self.x_cover)
        self.y_closure = ancestor_closure(self.y_cover)

    @property
    def x_strict(self) -> set[int]:
        # cover members are never ancestors of each other
        return self.x_closure.difference(self.x_cover)

    @property
    def y_strict(self) -> set[int]:
        return self.y_closure.difference(self.y_cover)


class UnifiedSegmentTree:
    """Static-universe unified segment tree with rectangle-intersection lists.

    The coordinate map is fixed at construction. Later inserts must use
    endpoints that are already registered.

    Not thread-safe for writes; concurrent reads are fine once writes stop.
    """

    def __init__(self, cmap: Optional[CoordinateMap] = None):
        self.cmap = cmap if cmap is not None else build_coordinate_map([])
        self.x_levels = self.cmap.x.levels
        self.y_levels = self.cmap.y.levels
        self._shift = self.y_levels + 1
        self._ymask = (1 << self._shift) - 1
        self.rects: dict[int, Rect] = {}
        self._here: dict[int, list[int]] = defaultdict(list)
        self._desc: dict[int, list[int]] = defaultdict(list)
        self._xdesc: dict[int, list[int]] = defaultdict(list)
        self._ydesc: dict[int, list[int]] = defaultdict(list)

    @classmethod
    def build(cls, rects: Iterable[Rect]) -> "UnifiedSegmentTree":
        rects = validate_rects(rects)
        tree = cls(build_coordinate_map(rects))
        for r in rects:
            tree.insert(r)
        return tree

    # -- address packing -------------------------------------------------

    def _key(self, hx: int, hy: int) -> int:
        return (hx << self._shift) | hy

    def _addr(self, key: int) -> DyadicAddress:
        x = DyadicNode1D.from_heap(key >> self._shift)
        y = DyadicNode1D.from_heap(key & self._ymask)
        return DyadicAddress.of(x, y)

    def _key_of(self, addr: DyadicAddress) -> int:
        return self._key(addr.x.heap_id, addr.y.heap_id)

    def in_universe(self, addr: DyadicAddress) -> bool:
        return (
            0 <= addr.xl <= self.x_levels
            and 0 <= addr.yl <= self.y_levels
            and 0 <= addr.xi < (1 << addr.xl)
            and 0 <= addr.yi < (1 << addr.yl)
        )

    # -- decomposition ---------------------------------------------------

    def rank_region(self, rect: Rect) -> tuple[RankInterval, RankInterval]:
        return (
            rank_interval(self.cmap, "x", rect.min_x, rect.max_x),
            rank_interval(self.cmap, "y", rect.min_y, rect.max_y),
        )

    def _footprint(self, rect: Rect) -> _Footprint:
        rx, ry = self.rank_region(rect)
        return _Footprint(
            cover_heap_ids(rx.lo, rx.hi, self.x_levels),
            cover_heap_ids(ry.lo, ry.hi, self.y_levels),
        )

    def canonical_pieces(self, rect: Rect, order: str = "xy") -> list[DyadicAddress]:
        """Product of the per-axis canonical covers of ``rect``.

        ``order="xy"`` decomposes along x first and then splits every x piece
        along y; ``"yx"`` does the reverse. Both give the same set.
        """
        rx, ry = self.rank_region(rect)
        if order == "xy":
            pieces = [
                DyadicAddress.of(u, v)
                for u in canonical_cover_1d(rx, self.x_levels)
                for v in canonical_cover_1d(ry, self.y_levels)
            ]
        elif order == "yx":
            pieces = [
                DyadicAddress.of(u, v)
                for v in canonical_cover_1d(ry, self.y_levels)
                for u in canonical_cover_1d(rx, self.x_levels)
            ]
        else:
            raise ValueError(f"order must be 'xy' or 'yx', got {order!r}")
        return pieces

    def strict_ancestor_set(self, rect: Rect) -> set[DyadicAddress]:
        """Distinct strict ancestors of all pieces of ``rect``."""
        fp = self._footprint(rect)
        pieces = {(u, v) for u in fp.x_cover for v in fp.y_cover}
        return {
            self._addr(self._key(u, v))
            for u in fp.x_closure
            for v in fp.y_closure
            if (u, v) not in pieces
        }

    # -- writes ----------------------------------------------------------

    def insert(self, rect: Rect) -> None:
        if rect.id in self.rects:
            raise DuplicateId(f"rect id {rect.id} is already stored")
        fp = self._footprint(rect)
        rid = rect.id
        key = self._key
        x_cover = set(fp.x_cover)
        y_cover = set(fp.y_cover)
        for u in fp.x_cover:
            for v in fp.y_cover:
                self._here[key(u, v)].append(rid)
        # every (u, v) in closure x closure is an ancestor-or-self of some piece
        for u in fp.x_closure:
            in_x_cover = u in x_cover
            for v in fp.y_closure:
                if in_x_cover and v in y_cover:
                    continue
                self._desc[key(u, v)].append(rid)
        for u in fp.x_strict:
            for v in fp.y_cover:
                self._xdesc[key(u, v)].append(rid)
        for u in fp.x_cover:
            for v in fp.y_strict:
                self._ydesc[key(u, v)].append(rid)
        self.rects[rid] = rect

    # -- reads -----------------------------------------------------------

    def record(self, addr: DyadicAddress) -> NodeRecord:
        k = self._key_of(addr)
        return NodeRecord(
            frozenset(self._here.get(k, ())),
            frozenset(self._desc.get(k, ())),
            frozenset(self._xdesc.get(k, ())),
            frozenset(self._ydesc.get(k, ())),
        )

    def _keys(self) -> set[int]:
        return set(self._here).union(self._desc)

    def addresses(self) -> list[DyadicAddress]:
        """Materialized addresses, sorted."""
        return sorted(self._addr(k) for k in self._keys())

    def __len__(self) -> int:
        return len(self.rects)

    def stab(self, p: Point) -> list[int]:
        sx = self.cmap.x.slab_of(p.x)
        sy = self.cmap.y.slab_of(p.y)
        if sx is None or sy is None:
            return []
        here = self._here
        out: list[int] = []
        hx = (1 << self.x_levels) | sx
        while hx:
            hy = (1 << self.y_levels) | sy
            while hy:
                ids = here.get(self._key(hx, hy))
                if ids:
                    out.extend(ids)
                hy >>= 1
            hx >>= 1
        # pieces of one rect are disjoint, so no id appears twice
        out.sort()
        return out

    def intersect_query(self, q: Rect) -> list[int]:
        """Ids of stored rects sharing positive area with ``q``.

        For each canonical piece c of ``q``:

        1. storedHere of every ancestor-or-self of c
        2. storedInDescendants of c
        3. storedInXDescendants of every strict y-ancestor of c
        4. storedInYDescendants of every strict x-ancestor of c

        The union over pieces of each step's address set factors into
        per-axis sets, which is how it is enumerated here.
        """
        fp = self._footprint(q)
        key = self._key
        found: set[int] = set()

        def collect(table, xs, ys):
            for u in xs:
                for v in ys:
                    ids = table.get(key(u, v))
                    if ids:
                        found.update(ids)

        collect(self._here, fp.x_closure, fp.y_closure)
        collect(self._desc, fp.x_cover, fp.y_cover)
        collect(self._xdesc, fp.x_cover, fp.y_strict)
        collect(self._ydesc, fp.x_strict, fp.y_cover)
        return sorted(found)

    def intersect_query_by_piece(self, q: Rect) -> list[int]:
        """Same answer as :meth:`intersect_query`, walking piece by piece."""
        found: set[int] = set()
        for c in self.canonical_pieces(q):
            for a in ancestors(c, include_self=True):
                found.update(self.record(a).stored_here)
            found.update(self.record(c).stored_in_descendants)
            for a in y_ancestors(c):
                found.update(self.record(a).stored_in_x_descendants)
            for a in x_ancestors(c):
                found.update(self.record(a).stored_in_y_descendants)
        return sorted(found)

    # -- structure -------------------------------------------------------

    def stats(self) -> TreeStats:
        units = {
            (a, b): UnitStats(a, b)
            for a in range(self.x_levels + 1)
            for b in range(self.y_levels + 1)
        }
        keys = self._keys()
        for k in keys:
            addr = self._addr(k)
            u = units[addr.unit]
            u.nodes += 1
            u.stored += len(self._here.get(k, ()))
        max_anc = 0
        max_pieces = 0
        for r in self.rects.values():
            fp = self._footprint(r)
            n_pieces = len(fp.x_cover) * len(fp.y_cover)
            max_pieces = max(max_pieces, n_pieces)
            max_anc = max(max_anc, len(fp.x_closure) * len(fp.y_closure) - n_pieces)
        return TreeStats(
            nodes=len(keys),
            units=[units[k] for k in sorted(units)],
            max_ancestors=max_anc,
            max_pieces=max_pieces,
            x_levels=self.x_levels,
            y_levels=self.y_levels,
            rects=len(self.rects),
        )

    def quadtree_view(self) -> list[DyadicAddress]:
        """Materialized nodes of square units (equal x and y level)."""
        return [a for a in self.addresses() if a.xl == a.yl]

    def iter_records(self) -> Iterator[tuple[DyadicAddress, NodeRecord]]:
        for k in sorted(self._keys()):
            addr = self._addr(k)
            yield addr, self.record(addr)

    def check_invariants(self) -> list[str]:
        """Return a description of every broken structural invariant."""
        problems = []
        for addr, rec in self.iter_records():
            if not self.in_universe(addr):
                problems.append(f"{addr} lies outside the padded universe")
            if not rec.stored_in_x_descendants <= rec.stored_in_descendants:
                problems.append(f"{addr}: x-descendant list not inside descendant list")
            if not rec.stored_in_y_descendants <= rec.stored_in_descendants:
                problems.append(f"{addr}: y-descendant list not inside descendant list")
            for ids in (rec.stored_here, rec.stored_in_descendants):
                unknown = ids - self.rects.keys()
                if unknown:
                    problems.append(f"{addr}: unknown ids {sorted(unknown)}")
        return problems


def build(rects: Iterable[Rect]) -> UnifiedSegmentTree:
    return UnifiedSegmentTree.build(rects)


def units_of(x_levels: int, y_levels: int) -> list[tuple[int, int]]:
    return list(itertools.product(range(x_levels + 1), range(y_levels + 1)))


def all_addresses(x_levels: int, y_levels: int) -> Iterator[DyadicAddress]:
    for xl in range(x_levels + 1):
        for xi in range(1 << xl):
            for yl in range(y_levels + 1):
                for yi in range(1 << yl):
                    yield DyadicAddress(xl, xi, yl, yi)


__all__ = [
    "DyadicAddress",
    "NoChild",
    "NoParent",
    "NodeRecord",
    "ROOT",
    "TreeStats",
    "UnifiedSegmentTree",
    "all_addresses",
    "ancestors",
    "build",
    "crossing",
    "is_descendant",
    "units_of",
    "x_ancestors",
    "x_children",
    "x_parent",
    "y_ancestors",
    "y_children",
    "y_parent",
]
