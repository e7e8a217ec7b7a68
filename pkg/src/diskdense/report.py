"""Range reporting over disks: radius-class grids with optional early abort.

Disks are bucketed by ceil(log2 r); each class keeps a uniform grid over the
centers whose cell side equals the class's maximum radius.  A query probes
the cells within reach of the query disk, confirms candidates with the exact
predicate, and can abort once more than a caller-supplied number of hits has
been seen.  Bucketing affects cost only; the result set never depends on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geom import Disk, intersect_mask

# Below this size a single brute-force bucket beats grid bookkeeping.
_TINY = 32


@dataclass(frozen=True)
class ReportOutcome:
    """Either the full duplicate-free hit list, or the fact of overflow."""

    overflowed: bool
    ids: np.ndarray | None      # sorted hit ids; None when overflowed
    count_seen: int             # hits seen; > limit when overflowed

    @classmethod
    def full(cls, ids: np.ndarray) -> "ReportOutcome":
        return cls(False, ids, len(ids))

    @classmethod
    def overflow(cls, count_seen: int) -> "ReportOutcome":
        return cls(True, None, count_seen)


class _RadiusClass:
    """One grid: members sorted by cell, cell -> slice lookup, occupied list."""

    __slots__ = ("side", "ids", "cx", "cy", "r", "cell_map",
                 "occ_ix", "occ_iy", "occ_lo", "occ_hi")

    def __init__(self, side: float, ids, cx, cy, r):
        self.side = side
        ix = np.floor(cx / side).astype(np.int64)
        iy = np.floor(cy / side).astype(np.int64)
        order = np.lexsort((iy, ix))
        self.ids, self.cx, self.cy, self.r = ids[order], cx[order], cy[order], r[order]
        ix, iy = ix[order], iy[order]
        change = np.flatnonzero((np.diff(ix) != 0) | (np.diff(iy) != 0)) + 1
        starts = np.concatenate([[0], change, [len(ix)]])
        self.occ_ix = ix[starts[:-1]]
        self.occ_iy = iy[starts[:-1]]
        self.occ_lo = starts[:-1]
        self.occ_hi = starts[1:]
        self.cell_map = {(int(a), int(b)): (int(lo), int(hi))
                         for a, b, lo, hi in zip(self.occ_ix, self.occ_iy,
                                                 self.occ_lo, self.occ_hi)}

    def candidate_slices(self, qx: float, qy: float, qr: float) -> tuple[list, int]:
        """(list of (lo, hi) member slices, cells inspected) for one query."""
        s = self.side
        reach = qr + s
        iy_lo = math.floor((qy - reach) / s)
        iy_hi = math.floor((qy + reach) / s)
        ix_lo = math.floor((qx - reach) / s)
        ix_hi = math.floor((qx + reach) / s)
        n_range = (ix_hi - ix_lo + 1) * (iy_hi - iy_lo + 1)
        slices = []
        if n_range <= len(self.occ_ix):
            inspected = 0
            for iy in range(iy_lo, iy_hi + 1):
                # distance from qy to the row strip [iy*s, (iy+1)*s]
                dy = max(iy * s - qy, qy - (iy + 1) * s, 0.0)
                if dy > reach:
                    continue
                dx_max = math.sqrt(reach * reach - dy * dy)
                for ix in range(math.floor((qx - dx_max) / s),
                                math.floor((qx + dx_max) / s) + 1):
                    inspected += 1
                    sl = self.cell_map.get((ix, iy))
                    if sl is not None:
                        slices.append(sl)
            return slices, inspected
        # sparse occupancy: filter the occupied cells by rectangle distance
        ex = np.maximum(self.occ_ix * s - qx, 0.0)
        ex = np.maximum(ex, qx - (self.occ_ix + 1) * s)
        ey = np.maximum(self.occ_iy * s - qy, 0.0)
        ey = np.maximum(ey, qy - (self.occ_iy + 1) * s)
        near = np.flatnonzero(ex * ex + ey * ey <= reach * reach)
        slices = [(int(self.occ_lo[i]), int(self.occ_hi[i])) for i in near]
        return slices, len(near)


class ReportIndex:
    """Immutable index over a fixed disk set answering intersection queries."""

    def __init__(self, disks: Sequence[Disk]):
        if len(disks) == 0:
            raise ValueError("cannot index an empty disk set")
        ids = np.array([d.id for d in disks], dtype=np.int64)
        cx = np.array([d.cx for d in disks], dtype=np.float64)
        cy = np.array([d.cy for d in disks], dtype=np.float64)
        r = np.array([d.r for d in disks], dtype=np.float64)
        self._init_from_arrays(ids, cx, cy, r)

    @classmethod
    def from_arrays(cls, ids, cx, cy, r) -> "ReportIndex":
        self = object.__new__(cls)
        self._init_from_arrays(ids, cx, cy, r)
        return self

    def _init_from_arrays(self, ids, cx, cy, r):
        self.ids, self.cx, self.cy, self.r = ids, cx, cy, r
        self.n = len(ids)
        self._members = None   # id set, built lazily for membership checks
        if self.n <= _TINY:
            self.classes = None
            return
        klass = np.ceil(np.log2(r)).astype(np.int64)
        self.classes = []
        for k in np.unique(klass):
            sel = klass == k
            self.classes.append(_RadiusClass(float(2.0 ** k),
                                             ids[sel], cx[sel], cy[sel], r[sel]))

    def _query(self, qx: float, qy: float, qr: float,
               limit: int | None) -> tuple[bool, np.ndarray | None, int, int]:
        """Core scan. Returns (overflowed, sorted ids, hits seen, cells inspected)."""
        if self.classes is None:
            mask = intersect_mask(self.cx, self.cy, self.r, qx, qy, qr)
            count = int(mask.sum())
            if limit is not None and count > limit:
                return True, None, count, 1
            return False, np.sort(self.ids[mask]), count, 1
        hits = []
        count = 0
        cells_total = 0
        for cls in self.classes:
            slices, inspected = cls.candidate_slices(qx, qy, qr)
            cells_total += inspected
            if not slices:
                continue
            if len(slices) == 1:
                lo, hi = slices[0]
                idx = slice(lo, hi)
            else:
                idx = np.concatenate([np.arange(lo, hi) for lo, hi in slices])
            mask = intersect_mask(cls.cx[idx], cls.cy[idx], cls.r[idx], qx, qy, qr)
            got = cls.ids[idx][mask]
            if len(got):
                hits.append(got)
                count += len(got)
                if limit is not None and count > limit:
                    return True, None, count, cells_total
        out = np.sort(np.concatenate(hits)) if hits else np.empty(0, dtype=np.int64)
        return False, out, count, cells_total

    def report(self, q: Disk, limit: int | None = None) -> ReportOutcome:
        """All indexed disks intersecting q, or Overflow once more than
        `limit` hits have been seen (abort only when strictly exceeding)."""
        over, ids, count, _ = self._query(q.cx, q.cy, q.r, limit)
        return ReportOutcome.overflow(count) if over else ReportOutcome.full(ids)

    def count(self, q: Disk, limit: int | None = None) -> tuple[bool, int]:
        """(overflowed, hits seen); same scan as report without keeping ids."""
        over, _, count, _ = self._query(q.cx, q.cy, q.r, limit)
        return over, count

    def degree(self, o: Disk) -> int:
        """Number of indexed disks intersecting the member o, o itself excluded."""
        if self._members is None:
            self._members = set(int(i) for i in self.ids)
        if int(o.id) not in self._members:
            raise KeyError(f"disk {o.id} is not indexed")
        _, _, count, _ = self._query(o.cx, o.cy, o.r, None)
        return count - 1
