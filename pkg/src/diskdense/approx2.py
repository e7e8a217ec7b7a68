"""(2+eps)-approximate densest subset of disks via batched low-degree removal.

Rounds try exponentially decaying degree thresholds beta = n*(1-theta)^i with
theta = eps/15; each round starts from the full disk set and repeatedly drops
every disk whose estimated degree falls below (1+theta)*beta.  A round where
nothing clears the threshold fails to the next one; as soon as the low-degree
batch is smaller than a theta fraction of the live set, the live set is the
answer.  Degree estimates come from a fresh sampling hierarchy per iteration
(error parameter theta); estimates that are approximate yet small are
recomputed exactly, since a one-off error there could misclassify a disk.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

import numpy as np

from .density import DensityResult
from .geom import Disk, Instance
from .pairs import all_pairs
from .rngutil import SeedBank
from .sampletree import SampleTree

THETA_FRACTION = 15


def induced_pair_count(inst: Instance, ids) -> int:
    """Number of intersecting pairs among the given member disks."""
    sub = inst.subset(int(i) for i in ids)
    relabeled = Instance(tuple(Disk(k, d.cx, d.cy, d.r) for k, d in enumerate(sub)))
    return len(all_pairs(relabeled))


def _exact_density(inst: Instance, live: np.ndarray) -> Fraction:
    return Fraction(induced_pair_count(inst, live), len(live))


def low_degree_split(live_disks, beta: float, theta: float, c: float,
                     tree_seed: int, qrng) -> tuple[np.ndarray, int]:
    """One classification pass: build a fresh hierarchy over the live disks,
    estimate every degree at error theta, and flag those below (1+theta)*beta.

    Approximate estimates below twice the level-switch threshold are recomputed
    exactly; a one-off error on a small count could misclassify a disk.
    Returns (low mask, number of exact recomputations)."""
    tree = SampleTree(live_disks, c=c, seed=tree_seed)
    psi_theta = tree.psi_eps(theta)
    est_deg = np.empty(len(live_disks), dtype=np.float64)
    clamped = 0
    for idx, d in enumerate(live_disks):
        est, exact = tree.approx_count(d, theta, qrng)
        if not exact and est < 2.0 * psi_theta:
            est = tree.root.count(d, None)[1]
            clamped += 1
        est_deg[idx] = est - 1
    return est_deg < (1.0 + theta) * beta, clamped


def densest_disks_2eps(inst: Instance, eps: float, c: float = 2.0, seed: int = 0,
                       report_exact: bool = True, trace: list | None = None) -> DensityResult:
    """Returns a disk subset whose density is within 2+eps of optimal (with
    high empirical probability), never materializing the full edge set."""
    t0 = time.perf_counter()
    n = inst.n
    if n < 2:
        raise ValueError("need at least two disks")
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    theta = eps / THETA_FRACTION
    bank = SeedBank(seed)
    disks = inst.disks

    params = {"eps": eps, "c": c, "seed": seed, "theta": theta}
    rounds = 0
    iterations = 0
    clamped = 0
    i = 0
    while True:
        beta = n * (1.0 - theta) ** i
        if beta < 1.0 / (2.0 * (1.0 + theta)):
            # only reachable when no threshold ever produced survivors,
            # i.e. the instance is edgeless
            dens = _exact_density(inst, np.arange(n)) if n else Fraction(0)
            return DensityResult(tuple(range(n)), dens, "approx-2eps", params,
                                 time.perf_counter() - t0,
                                 {"degenerate": True, "rounds": rounds,
                                  "iterations": iterations, "beta": beta,
                                  "clamped_exact": clamped, "estimated": False})
        rounds += 1
        live = np.arange(n, dtype=np.int64)
        while True:
            iterations += 1
            live_disks = [disks[int(x)] for x in live]
            low, nclamped = low_degree_split(
                live_disks, beta, theta, c,
                int(bank.rng("tree-build").integers(2 ** 63)), bank.rng("queries"))
            clamped += nclamped
            n_low = int(low.sum())
            if trace is not None:
                trace.append({"round": i, "beta": beta, "live": live.copy(),
                              "kept": live[~low].copy()})
            if n_low == len(live):
                break                      # round failed; lower the threshold
            if n_low < theta * len(live):
                live_set = live
                kept = live[~low]
                if report_exact:
                    dens = _exact_density(inst, live_set)
                    estimated = False
                else:
                    dens = Fraction((1.0 - theta) * beta * len(kept)
                                    / (2 * len(live_set)))
                    estimated = True
                return DensityResult(tuple(int(x) for x in live_set), dens,
                                     "approx-2eps", params, time.perf_counter() - t0,
                                     {"rounds": rounds, "iterations": iterations,
                                      "beta": beta, "clamped_exact": clamped,
                                      "estimated": estimated,
                                      "survivors": len(kept)})
            live = live[~low]
        i += 1
