"""Enumerate every intersecting pair of disks exactly once.

`all_pairs` sweeps the x-axis over the disks' x-extents while keeping the
active disks in a list ordered by the bottom of their y-extent; candidate
pairs whose bounding boxes overlap are confirmed with the exact predicate.
Containment needs no special casing since a contained disk's bounding box
overlaps its container's.  `all_pairs_naive` is the quadratic oracle.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .geom import Instance, intersect_mask, intersects


@dataclass(frozen=True)
class PairList:
    """(k, 2) array of id pairs with u < v, lexicographically sorted, unique."""

    pairs: np.ndarray

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for u, v in self.pairs:
            yield int(u), int(v)

    def as_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.pairs}

    def __eq__(self, other) -> bool:
        return isinstance(other, PairList) and np.array_equal(self.pairs, other.pairs)


def _make_pairlist(pairs: list[tuple[int, int]]) -> PairList:
    if not pairs:
        return PairList(np.empty((0, 2), dtype=np.int64))
    arr = np.array(pairs, dtype=np.int64)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    return PairList(arr[order])


def all_pairs(inst: Instance) -> PairList:
    """Every unordered intersecting pair, each exactly once."""
    n = inst.n
    if n < 2:
        return _make_pairlist([])
    disks = inst.disks
    events = []
    for d in disks:
        events.append((d.cx - d.r, 0, d.id))   # start
        events.append((d.cx + d.r, 1, d.id))   # end; starts first on ties
    events.sort()

    active: list[tuple[float, int, float]] = []   # (y_lo, id, y_hi) sorted
    out: list[tuple[int, int]] = []
    for _, typ, idx in events:
        d = disks[idx]
        key = (d.cy - d.r, idx, d.cy + d.r)
        if typ == 1:
            pos = bisect.bisect_left(active, key)
            active.pop(pos)
            continue
        y_lo, y_hi = key[0], key[2]
        hi = bisect.bisect_right(active, (y_hi, n, 0.0))
        for a_lo, a_id, a_hi in active[:hi]:
            if a_hi >= y_lo and intersects(d, disks[a_id]):
                out.append((a_id, idx) if a_id < idx else (idx, a_id))
        bisect.insort(active, key)
    return _make_pairlist(out)


def all_pairs_naive(inst: Instance, block: int = 512) -> PairList:
    """Quadratic predicate scan; the canonical reference output.

    Intended for n up to a few thousand; memory is kept at O(block * n).
    """
    n = inst.n
    if n < 2:
        return _make_pairlist([])
    _, cx, cy, r = inst.arrays
    chunks = []
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        dx = cx[lo:hi, None] - cx[None, :]
        dy = cy[lo:hi, None] - cy[None, :]
        s = r[lo:hi, None] + r[None, :]
        lhs = dx * dx + dy * dy
        rhs = s * s
        mask = lhs <= rhs
        near = np.abs(lhs - rhs) <= 1e-12 * np.maximum(lhs, rhs)
        # keep the upper triangle only: global i < j
        cols = np.arange(n)[None, :]
        rows = np.arange(lo, hi)[:, None]
        upper = rows < cols
        mask &= upper
        near &= upper
        if near.any():
            ii, jj = np.nonzero(near)
            for i, j in zip(ii, jj):
                gi = lo + int(i)
                mask[i, j] = intersects(inst.disks[gi], inst.disks[int(j)])
        ii, jj = np.nonzero(mask)
        if len(ii):
            chunks.append(np.stack([ii + lo, jj], axis=1))
    if not chunks:
        return _make_pairlist([])
    arr = np.concatenate(chunks).astype(np.int64)
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    return PairList(arr[order])
