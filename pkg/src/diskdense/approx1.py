"""(1+eps)-approximate densest subset of disks via almost-uniform edge sampling.

If the degree-table estimate of the edge count is small, the whole
intersection graph is built and solved directly.  Otherwise r edges are drawn
with repetition (vertex proportional to its degree weight through a prefix-sum
search, then a near-uniform neighbor), and a near-optimal subset of the sparse
sampled multigraph is returned with its exact density in the full graph.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .approx2 import induced_pair_count
from .density import DensityResult, ExplicitGraph, subsolver_densest
from .geom import Instance
from .pairs import all_pairs
from .rngutil import SeedBank
from .sampletree import SampleTree

THETA_FRACTION = 10
DEFAULT_C = 2.0
DEFAULT_C_PRIME = 32.0
DEFAULT_SPARSE_FACTOR = 4.0


@dataclass
class DegreeTable:
    """Per-disk degree weights: exact neighbor lists below the small-degree
    cutoff c'/eps, count estimates above it."""

    d: np.ndarray                       # int64 weights
    small_lists: dict[int, np.ndarray]  # id -> exact neighbor ids (self excluded)
    params: dict = field(default_factory=dict)
    prefix: np.ndarray = None

    def __post_init__(self):
        if self.prefix is None:
            self.prefix = np.cumsum(self.d, dtype=np.int64)

    @property
    def total(self) -> int:
        return int(self.prefix[-1]) if len(self.prefix) else 0

    @property
    def m_bar(self) -> float:
        return self.total / 2.0


@dataclass(frozen=True)
class EdgeSample:
    """Multiset of sampled edges; every pair intersects."""

    edges: np.ndarray                   # (r, 2) int64, u < v per row
    params: dict

    def __len__(self) -> int:
        return len(self.edges)


def estimate_degrees(inst: Instance, eps: float, c: float = DEFAULT_C,
                     c_prime: float = DEFAULT_C_PRIME, seed: int = 0,
                     tree: SampleTree | None = None) -> DegreeTable:
    """Query each disk's intersector count at error eps/c; resolve estimates
    below c'/eps exactly by reporting (the exact lists double as neighbor
    caches for the sampler)."""
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if eps / c >= 0.5:
        raise ValueError(f"c={c} too small: per-query error eps/c must stay below 1/2")
    bank = SeedBank(seed)
    if tree is None:
        tree = SampleTree(inst.disks, c=c,
                          seed=int(bank.rng("tree-build").integers(2 ** 63)))
    rng = bank.rng("queries")
    cutoff = c_prime / eps
    d = np.zeros(inst.n, dtype=np.int64)
    small: dict[int, np.ndarray] = {}
    for disk in inst.disks:
        est, _ = tree.approx_count(disk, eps / c, rng)
        if est < cutoff:
            ids = tree.root.report(disk).ids
            ids = ids[ids != disk.id]
            small[disk.id] = ids
            d[disk.id] = len(ids)
        else:
            d[disk.id] = est
    return DegreeTable(d, small, {"eps": eps, "c": c, "c_prime": c_prime, "seed": seed})


def sample_edges(inst: Instance, table: DegreeTable, tree: SampleTree,
                 r: int, eps: float, seed: int = 0) -> EdgeSample:
    """r independent edge draws: vertex o with probability d_o / sum(d), then
    a uniform cached neighbor (small degrees) or a near-uniform tree sample
    excluding o itself.  Draws are grouped per vertex; the distribution is
    the same as drawing one at a time."""
    if table.m_bar <= 0:
        raise ValueError("cannot sample edges from an (estimated) empty edge set")
    bank = SeedBank(seed)
    vrng = bank.rng("vertex-draws")
    nrng = bank.rng("neighbor-draws")
    draws = np.searchsorted(table.prefix, vrng.integers(0, table.total, size=r),
                            side="right")
    out = np.empty((r, 2), dtype=np.int64)
    out[:, 0] = draws
    counts = np.bincount(draws, minlength=inst.n)
    c = table.params.get("c", DEFAULT_C)
    for o in np.flatnonzero(counts):
        o = int(o)
        k = int(counts[o])
        where = np.flatnonzero(draws == o)
        if o in table.small_lists:
            lst = table.small_lists[o]
            picks = lst[nrng.integers(0, len(lst), size=k)]
        else:
            picks = tree.batch_sample_excluding(inst.disks[o], o, eps / c, nrng, k)
            if (picks < 0).any():
                raise RuntimeError(f"no neighbor found for disk {o} during sampling")
        out[where, 1] = picks
    lo = out.min(axis=1)
    hi = out.max(axis=1)
    edges = np.stack([lo, hi], axis=1)
    return EdgeSample(edges, {"r": r, "eps": eps, "seed": seed})


def densest_disks_1eps(inst: Instance, eps: float, c: float = DEFAULT_C,
                       c_prime: float = DEFAULT_C_PRIME, seed: int = 0,
                       sparse_factor: float = DEFAULT_SPARSE_FACTOR) -> DensityResult:
    """Returns a disk subset of density at least (1-eps) times optimal (with
    high empirical probability).  Sparse instances are solved exactly."""
    t0 = time.perf_counter()
    n = inst.n
    if n < 2:
        raise ValueError("need at least two disks")
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    params = {"eps": eps, "c": c, "c_prime": c_prime, "seed": seed,
              "sparse_factor": sparse_factor}
    bank = SeedBank(seed)
    tree = SampleTree(inst.disks, c=c,
                      seed=int(bank.rng("tree-build").integers(2 ** 63)))
    table = estimate_degrees(inst, eps, c, c_prime, seed, tree=tree)
    m_bar = table.m_bar
    if table.total == 0:
        return DensityResult((0,), Fraction(0), "approx-1eps", params,
                             time.perf_counter() - t0,
                             {"path": "edgeless", "m_bar": 0.0})

    threshold = sparse_factor * n * math.log(n) / (eps * eps)
    if m_bar <= threshold:
        g = ExplicitGraph.from_pairs(n, all_pairs(inst))
        sub = subsolver_densest(g, eps)
        return DensityResult(sub.subset, sub.density, "approx-1eps", params,
                             time.perf_counter() - t0,
                             {"path": "sparse", "m_bar": m_bar,
                              "threshold": threshold, "m": g.m})

    theta = eps / THETA_FRACTION
    psi = c * (n / m_bar) * math.log(n) / (theta * theta)
    r = int(math.ceil(psi * m_bar))
    sample = sample_edges(inst, table, tree, r, eps, seed)
    h = ExplicitGraph(n, sample.edges)
    sub = subsolver_densest(h, eps / 6.0)
    subset = sub.subset
    dens = Fraction(induced_pair_count(inst, subset), len(subset))
    return DensityResult(subset, dens, "approx-1eps", params,
                         time.perf_counter() - t0,
                         {"path": "sampled", "m_bar": m_bar, "threshold": threshold,
                          "r": r, "psi": psi, "sampled_density": str(sub.density)})
