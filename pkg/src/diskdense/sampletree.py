"""Random binary hierarchy over disks answering approximate-count and
near-uniform-sample queries through range reporting alone.

Every disk gets one random bit per level, so the node holding it at depth d
is the d-bit prefix of its code; the nonempty nodes of a level partition the
whole set, and each carries a ReportIndex.  A query walks a fixed leaf path:
binary-search the deepest node whose hit count still exceeds psi = c*ln(n)
(reporting aborts early at that limit), walk up to the deepest node whose
count exceeds psi_eps = c*ln(n)/eps^2, then draw a uniform depth-j slot and a
uniform element of the query's hits inside it.  2^j times that hit count
estimates the total; when j = 0 the node is the root and both the count and
the sample are exact.

Empty slots (and slots whose hit set is empty) are redrawn a bounded number
of times, then the query falls back to an exact root report; conditioned on
landing in a nonempty slot the choice is exactly uniform over them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geom import Disk
from .report import ReportIndex

_SLOT_RETRIES = 32


@dataclass(frozen=True)
class EstimateSample:
    """Count estimate 2^j * |S|, optional sampled disk id, level used."""

    estimate: int
    sample: int | None
    j: int
    exact: bool


class SampleTree:
    """Immutable after construction; queries need a caller-supplied rng."""

    def __init__(self, disks: Sequence[Disk], c: float = 2.0, seed: int = 0):
        if len(disks) == 0:
            raise ValueError("cannot build a tree over an empty disk set")
        if c <= 0:
            raise ValueError("confidence constant c must be positive")
        self.c = float(c)
        self.seed = seed
        self.n = len(disks)
        self.depth = max(int(math.ceil(math.log2(self.n))), 0) if self.n > 1 else 0
        ids = np.array([d.id for d in disks], dtype=np.int64)
        cx = np.array([d.cx for d in disks], dtype=np.float64)
        cy = np.array([d.cy for d in disks], dtype=np.float64)
        r = np.array([d.r for d in disks], dtype=np.float64)

        rng = np.random.default_rng(seed)
        if self.depth > 0:
            self.codes = rng.integers(0, 1 << self.depth, size=self.n, dtype=np.int64)
        else:
            self.codes = np.zeros(self.n, dtype=np.int64)

        order = np.argsort(self.codes, kind="stable")
        s_codes = self.codes[order]
        s_ids, s_cx, s_cy, s_r = ids[order], cx[order], cy[order], r[order]

        # levels[d]: dict prefix -> ReportIndex over the members below that node
        self.levels: list[dict[int, ReportIndex]] = []
        for d in range(self.depth + 1):
            prefixes = s_codes >> (self.depth - d)
            change = np.flatnonzero(np.diff(prefixes)) + 1
            starts = np.concatenate([[0], change, [self.n]])
            nodes = {}
            for lo, hi in zip(starts[:-1], starts[1:]):
                nodes[int(prefixes[lo])] = ReportIndex.from_arrays(
                    s_ids[lo:hi], s_cx[lo:hi], s_cy[lo:hi], s_r[lo:hi])
            self.levels.append(nodes)

    # -- thresholds ---------------------------------------------------------

    def psi(self) -> float:
        return self.c * math.log(self.n) if self.n > 1 else 0.0

    def psi_eps(self, eps: float) -> float:
        return self.psi() / (eps * eps)

    @property
    def root(self) -> ReportIndex:
        return self.levels[0][0]

    def node(self, depth: int, prefix: int) -> ReportIndex | None:
        return self.levels[depth].get(prefix)

    def members(self, depth: int, prefix: int) -> np.ndarray:
        """Ids stored below the (depth, prefix) slot; empty if the slot is."""
        idx = self.levels[depth].get(prefix)
        return np.sort(idx.ids) if idx is not None else np.empty(0, dtype=np.int64)

    # -- query machinery ----------------------------------------------------

    def _count_exceeds(self, depth: int, q: Disk, threshold: float) -> bool:
        """Does |q ^ members(path node at depth)| exceed threshold?  The path
        is the all-zeros one, so the node is prefix 0; reporting aborts early."""
        node = self.levels[depth].get(0)
        if node is None:
            return False
        over, _ = node.count(q, limit=int(math.floor(threshold)))
        return over

    def _search_levels(self, q: Disk, eps: float) -> int:
        """The level j the estimator uses for this query (deterministic)."""
        psi = self.psi()
        if not self._count_exceeds(0, q, psi):
            return 0
        lo, hi = 0, self.depth
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._count_exceeds(mid, q, psi):
                lo = mid
            else:
                hi = mid - 1
        psi_e = self.psi_eps(eps)
        for t in range(lo, -1, -1):
            if self._count_exceeds(t, q, psi_e):
                return t
        return 0

    def _slot_hits(self, q: Disk, j: int, slot: int) -> np.ndarray:
        node = self.levels[j].get(slot)
        if node is None:
            return np.empty(0, dtype=np.int64)
        return node.report(q).ids

    def _query(self, q: Disk, eps: float, rng: np.random.Generator,
               want_sample: bool) -> EstimateSample:
        if not (0.0 < eps <= 0.5):
            raise ValueError(f"eps must lie in (0, 1/2], got {eps}")
        if rng is None:
            rng = np.random.default_rng()
        j = self._search_levels(q, eps)
        hits = None
        if j > 0:
            for _ in range(_SLOT_RETRIES):
                slot = int(rng.integers(0, 1 << j))
                got = self._slot_hits(q, j, slot)
                if len(got):
                    hits = got
                    break
            else:
                j = 0   # exhausted: exact fallback
        if j == 0:
            hits = self.root.report(q).ids
        estimate = (1 << j) * len(hits)
        sample = None
        if len(hits) and want_sample:
            sample = int(hits[rng.integers(0, len(hits))])
        return EstimateSample(estimate, sample, j, exact=(j == 0))

    def query(self, q: Disk, eps: float, rng: np.random.Generator) -> EstimateSample:
        """Count estimate plus a near-uniform sample of q's intersectors."""
        return self._query(q, eps, rng, want_sample=True)

    def approx_count(self, q: Disk, eps: float,
                     rng: np.random.Generator | None = None) -> tuple[int, bool]:
        """(estimate, exact) without drawing a sample element."""
        res = self._query(q, eps, rng, want_sample=False)
        return res.estimate, res.exact

    def sample_excluding(self, q: Disk, self_id: int, eps: float,
                         rng: np.random.Generator, max_retries: int = 64) -> int | None:
        """A near-uniform intersector of q other than self_id; None if there
        is none.  Retries the query, then falls back to an exact uniform draw."""
        for _ in range(max_retries):
            res = self._query(q, eps, rng, want_sample=True)
            if res.sample is None:
                break   # no intersector at all in an exact round
            if res.sample != self_id:
                return res.sample
        others = self.root.report(q).ids
        others = others[others != self_id]
        if len(others) == 0:
            return None
        return int(others[rng.integers(0, len(others))])

    def batch_sample_excluding(self, q: Disk, self_id: int, eps: float,
                               rng: np.random.Generator, k: int,
                               max_retries: int = 64) -> np.ndarray:
        """k independent draws distributed exactly like sample_excluding.

        The level j is deterministic per (tree, query), so the per-draw loop
        reduces to slot and element draws; grouping them is a pure speedup.
        """
        if not (0.0 < eps <= 0.5):
            raise ValueError(f"eps must lie in (0, 1/2], got {eps}")
        j = self._search_levels(q, eps)
        out = np.full(k, -1, dtype=np.int64)
        if j == 0:
            others = self.root.report(q).ids
            others = others[others != self_id]
            if len(others) == 0:
                return out
            return others[rng.integers(0, len(others), size=k)]
        slot_hits: dict[int, np.ndarray] = {}
        pending = np.arange(k)
        for _ in range(max_retries):
            if len(pending) == 0:
                return out
            slots = rng.integers(0, 1 << j, size=len(pending))
            drawn = np.full(len(pending), -1, dtype=np.int64)
            for slot in np.unique(slots):
                s = int(slot)
                if s not in slot_hits:
                    slot_hits[s] = self._slot_hits(q, j, s)
                hits = slot_hits[s]
                if len(hits) == 0:
                    continue
                where = np.flatnonzero(slots == slot)
                drawn[where] = hits[rng.integers(0, len(hits), size=len(where))]
            ok = drawn != self_id
            out[pending[ok]] = drawn[ok]
            pending = pending[~ok]
        if len(pending):
            others = self.root.report(q).ids
            others = others[others != self_id]
            if len(others):
                out[pending] = others[rng.integers(0, len(others), size=len(pending))]
        return out

    # -- instrumentation (tests) --------------------------------------------

    def path_counts(self, q: Disk) -> list[int]:
        """Exact |q ^ members| along the all-zeros path, root to leaf."""
        counts = []
        for d in range(self.depth + 1):
            node = self.levels[d].get(0)
            counts.append(0 if node is None else int(node.count(q, None)[1]))
        return counts
