"""One-dimensional segment tree over a padded rank universe of ``2**L`` slabs.

Nodes are never materialized. A node is the pair ``(level, index)``; level 0
is the root, and the node covers ranks
``[index * 2**(L - level), (index + 1) * 2**(L - level))``.

Internally the unified tree packs a node into a single "heap id"
``(1 << level) | index`` so that the parent is ``h >> 1`` and the level is
``h.bit_length() - 1``.
"""

from __future__ import annotations

from typing import NamedTuple

from .geometry import RankInterval


class DyadicNode1D(NamedTuple):
    level: int
    index: int

    def interval(self, levels: int) -> RankInterval:
        width = 1 << (levels - self.level)
        return RankInterval(self.index * width, (self.index + 1) * width)

    def parent(self) -> "DyadicNode1D":
        if self.level == 0:
            raise ValueError("the root has no parent")
        return DyadicNode1D(self.level - 1, self.index >> 1)

    def children(self) -> tuple["DyadicNode1D", "DyadicNode1D"]:
        return (
            DyadicNode1D(self.level + 1, self.index << 1),
            DyadicNode1D(self.level + 1, (self.index << 1) | 1),
        )

    @property
    def heap_id(self) -> int:
        return (1 << self.level) | self.index

    @classmethod
    def from_heap(cls, h: int) -> "DyadicNode1D":
        level = h.bit_length() - 1
        return cls(level, h ^ (1 << level))


def valid_node(node: DyadicNode1D, levels: int) -> bool:
    return 0 <= node.level <= levels and 0 <= node.index < (1 << node.level)


def canonical_cover_1d(interval: RankInterval, levels: int) -> list[DyadicNode1D]:
    """Maximal dyadic nodes tiling ``[lo, hi)``, ordered by rank.

    Textbook descent from the root, splitting at node midpoints.
    """
    lo, hi = interval
    if not 0 <= lo < hi <= (1 << levels):
        raise ValueError(f"interval [{lo}, {hi}) is empty or outside universe of {1 << levels} slabs")
    out: list[DyadicNode1D] = []
    # depth-first with the right child pushed first keeps the output rank-ordered
    stack = [(0, 0, 0, 1 << levels)]
    while stack:
        level, index, nlo, nhi = stack.pop()
        if hi <= nlo or nhi <= lo:
            continue
        if lo <= nlo and nhi <= hi:
            out.append(DyadicNode1D(level, index))
            continue
        mid = (nlo + nhi) >> 1
        stack.append((level + 1, 2 * index + 1, mid, nhi))
        stack.append((level + 1, 2 * index, nlo, mid))
    return out


def cover_heap_ids(lo: int, hi: int, levels: int) -> list[int]:
    """Heap ids of the canonical cover of ``[lo, hi)``, bottom-up.

    Same set as :func:`canonical_cover_1d`, computed with the iterative
    leaf-pair walk; used on the insert/query hot path.
    """
    out = []
    size = 1 << levels
    lo += size
    hi += size
    while lo < hi:
        if lo & 1:
            out.append(lo)
            lo += 1
        if hi & 1:
            hi -= 1
            out.append(hi)
        lo >>= 1
        hi >>= 1
    return out


def ancestors_1d(node: DyadicNode1D) -> list[DyadicNode1D]:
    """Strict ancestors, nearest first."""
    return [DyadicNode1D(node.level - k, node.index >> k) for k in range(1, node.level + 1)]


def stab_path_1d(slab: int, levels: int) -> list[DyadicNode1D]:
    if not 0 <= slab < (1 << levels):
        raise ValueError(f"slab {slab} outside universe of {1 << levels} slabs")
    return [DyadicNode1D(level, slab >> (levels - level)) for level in range(levels + 1)]


def ancestor_closure(heap_ids) -> set[int]:
    """All ancestors-or-self of the given heap ids."""
    seen: set[int] = set()
    for h in heap_ids:
        while h and h not in seen:
            seen.add(h)
            h >>= 1
    return seen
