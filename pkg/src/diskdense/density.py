"""Explicit-graph layer: exact rational densities, brute-force and min-cut
exact densest-subgraph solvers, and greedy peeling.

Densities are Fractions throughout, never floats, so ties are unambiguous.
The exact solver tests candidate densities g with a min cut on the standard
network (source->v capacity M, v->sink capacity M + 2g - deg(v), each edge as
opposing unit arcs, everything scaled by g's denominator to stay integral);
a subset denser than g exists iff the cut drops below M*n.  Candidates are
searched on the grid k / (n(n-1)), which separates distinct densities.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .maxflow import max_flow_min_cut
from .pairs import PairList

_BRUTE_MAX_N = 22
_INT64_GUARD = 2 ** 62


class ExplicitGraph:
    """Undirected graph on vertices 0..n-1; repeated edges are allowed and
    count with multiplicity everywhere.  Self-loops are rejected."""

    def __init__(self, n: int, edges: Iterable | np.ndarray = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = int(n)
        edges = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                           dtype=np.int64)
        if edges.size == 0:
            edges = np.empty((0, 2), dtype=np.int64)
        edges = edges.reshape(-1, 2)
        u = np.minimum(edges[:, 0], edges[:, 1])
        v = np.maximum(edges[:, 0], edges[:, 1])
        if len(u):
            if u.min() < 0 or v.max() >= n:
                raise ValueError("edge endpoint out of range")
            if (u == v).any():
                raise ValueError("self-loops are not allowed")
        order = np.lexsort((v, u))
        self.u, self.v = u[order], v[order]
        self._collapsed = None

    @classmethod
    def from_pairs(cls, n: int, pl: PairList) -> "ExplicitGraph":
        return cls(n, pl.pairs)

    @property
    def m(self) -> int:
        return len(self.u)

    def degrees(self) -> np.ndarray:
        """Per-vertex degree, multiplicity included."""
        return (np.bincount(self.u, minlength=self.n)
                + np.bincount(self.v, minlength=self.n)).astype(np.int64)

    def collapsed(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(u, v, weight): distinct edges with their multiplicities."""
        if self._collapsed is None:
            if self.m == 0:
                z = np.empty(0, dtype=np.int64)
                self._collapsed = (z, z.copy(), z.copy())
            else:
                key = self.u * self.n + self.v
                uniq, counts = np.unique(key, return_counts=True)
                self._collapsed = (uniq // self.n, uniq % self.n, counts.astype(np.int64))
        return self._collapsed

    def induced_edge_count(self, S: Iterable[int]) -> int:
        """Edges with both endpoints in S, counted with multiplicity."""
        mask = np.zeros(self.n, dtype=bool)
        mask[np.fromiter(S, dtype=np.int64)] = True
        return int((mask[self.u] & mask[self.v]).sum())

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex [(neighbor, weight)] lists from the collapsed edges."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        eu, ev, w = self.collapsed()
        for a, b, wt in zip(eu, ev, w):
            adj[int(a)].append((int(b), int(wt)))
            adj[int(b)].append((int(a), int(wt)))
        return adj


@dataclass
class DensityResult:
    """A subset of ids with its exact density and run provenance."""

    subset: tuple[int, ...]
    density: Fraction
    algorithm: str
    params: dict = field(default_factory=dict)
    wall_time: float = 0.0
    info: dict = field(default_factory=dict)

    @property
    def density_float(self) -> float:
        return float(self.density)


def density_of(g: ExplicitGraph, S: Iterable[int]) -> Fraction:
    """Exact |E_S| / |S|, multiplicities included."""
    S = list(S)
    if not S:
        raise ValueError("density of the empty set is undefined")
    if min(S) < 0 or max(S) >= g.n:
        raise ValueError("subset contains vertices outside the graph")
    if len(set(S)) != len(S):
        raise ValueError("subset contains repeated vertices")
    return Fraction(g.induced_edge_count(S), len(S))


def _lexmin_mask(candidates: np.ndarray, n: int) -> int:
    """Lexicographically smallest id set among candidate bitmasks."""
    pool = candidates
    chosen = 0
    for v in range(n):
        if (pool == chosen).any():
            return chosen
        bit = 1 << v
        with_v = pool[(pool & bit) != 0]
        if len(with_v):
            pool = with_v
            chosen |= bit
    return chosen


def brute_densest(g: ExplicitGraph) -> DensityResult:
    """Exhaustive maximum over all nonempty subsets; ties resolved toward the
    lexicographically smallest id set.  Only sensible for n <= 22."""
    t0 = time.perf_counter()
    n = g.n
    if n < 1:
        raise ValueError("graph has no vertices")
    if n > _BRUTE_MAX_N:
        raise ValueError(f"brute force limited to n <= {_BRUTE_MAX_N}, got {n}")
    eu, ev, w = g.collapsed()
    W = np.zeros((n, n), dtype=np.int64)
    W[eu, ev] = w
    W[ev, eu] = w

    size = 1 << n
    E = np.zeros(size, dtype=np.int64)
    # fill by descending lowest-set-bit so E[high] (bits > v only) is ready
    for v in range(n - 1, -1, -1):
        # row_sum[mask] = total weight from v into mask (over bits > v is enough)
        row = np.zeros(size >> (v + 1) if v + 1 < n else 1, dtype=np.int64)
        width = n - v - 1
        for u in range(width):
            half = 1 << u
            view = row.reshape(-1, 2, half)
            view[:, 1, :] += W[v, v + 1 + u]
        high = np.arange(len(row), dtype=np.int64) << (v + 1)
        E[high | (1 << v)] = E[high] + row
    cnt = np.bitwise_count(np.arange(size, dtype=np.uint64)).astype(np.int64)

    lcm = math.lcm(*range(1, n + 1))
    score = E[1:] * (lcm // cnt[1:])
    best = int(score.max())
    if best == 0:
        result_mask, dens = 1, Fraction(0)
    else:
        cands = np.flatnonzero(score == best) + 1
        result_mask = _lexmin_mask(cands, n)
        dens = Fraction(int(E[result_mask]), int(cnt[result_mask]))
    subset = tuple(v for v in range(n) if result_mask >> v & 1)
    return DensityResult(subset, dens, "brute", {"n": n},
                         time.perf_counter() - t0)


def _goldberg_test(n: int, eu: np.ndarray, ev: np.ndarray, w: np.ndarray,
                   deg_w: np.ndarray, M: int, p: int, q: int,
                   forced: Sequence[int] = ()) -> tuple[bool, np.ndarray]:
    """Is there S (containing `forced`) with density > p/q?  Returns the
    min-cut source side as a witness when yes."""
    s, t = n, n + 1
    num_nodes = n + 2
    big = M * q * n + 1
    # flow is bounded by whichever cap sum is smaller; both must stay well
    # inside int64, as must every individual capacity
    src_sum = M * q * (n - len(forced)) + big * len(forced)
    sink_sum = n * (M * q + 2 * p)
    if max(big, M * q + 2 * p) >= _INT64_GUARD or min(src_sum, sink_sum) >= _INT64_GUARD:
        raise RuntimeError("exact density search would overflow int64 capacities")
    src_cap = np.full(n, M * q, dtype=np.int64)
    for fv in forced:
        src_cap[fv] = big   # cutting a forced vertex off the source never pays
    sink_cap = M * q + 2 * p - q * deg_w

    m = len(eu)
    num_arcs = 4 * n + 2 * m
    frm = np.empty(num_arcs, dtype=np.int64)
    to = np.empty(num_arcs, dtype=np.int64)
    cap = np.zeros(num_arcs, dtype=np.int64)
    # arcs 2i / 2i+1 are forward/reverse pairs; an undirected edge is one
    # pair with capacity w*q in both directions
    a = np.arange(n)
    frm[0:2 * n:2] = s;        to[0:2 * n:2] = a;   cap[0:2 * n:2] = src_cap
    frm[1:2 * n:2] = a;        to[1:2 * n:2] = s
    base = 2 * n
    frm[base:base + 2 * n:2] = a;     to[base:base + 2 * n:2] = t
    cap[base:base + 2 * n:2] = sink_cap
    frm[base + 1:base + 2 * n:2] = t; to[base + 1:base + 2 * n:2] = a
    base = 4 * n
    frm[base:base + 2 * m:2] = eu;     to[base:base + 2 * m:2] = ev
    cap[base:base + 2 * m:2] = w * q
    frm[base + 1:base + 2 * m:2] = ev; to[base + 1:base + 2 * m:2] = eu
    cap[base + 1:base + 2 * m:2] = w * q

    flow, reach = max_flow_min_cut(num_nodes, frm, to, cap, s, t)
    if flow >= M * q * n:
        return False, np.empty(0, dtype=np.int64)
    S = np.flatnonzero(reach[:n])
    return True, S


def exact_densest(g: ExplicitGraph, canonical: bool = True) -> DensityResult:
    """Optimal density via guess-and-cut over the grid k/(n(n-1)).

    With canonical=True the returned subset is additionally refined to the
    lexicographically smallest optimal one (one extra cut test per vertex),
    matching brute_densest's tie-break.
    """
    t0 = time.perf_counter()
    n = g.n
    if n < 1:
        raise ValueError("graph has no vertices")
    eu, ev, w = g.collapsed()
    W = int(w.sum())
    if W == 0:
        return DensityResult((0,), Fraction(0), "exact-mincut", {"n": n},
                             time.perf_counter() - t0, {"cut_tests": 0})
    deg_w = np.zeros(n, dtype=np.int64)
    np.add.at(deg_w, eu, w)
    np.add.at(deg_w, ev, w)
    M = int(deg_w.max())

    qs = n * (n - 1)
    klo = 0
    khi = (W * qs) // 2 + 1
    best_S = np.array([0], dtype=np.int64)
    best_d = Fraction(0)
    tests = 0
    while khi - klo > 1:
        k = (klo + khi) // 2
        ok, S = _goldberg_test(n, eu, ev, w, deg_w, M, k, qs)
        tests += 1
        if ok:
            dS = Fraction(g.induced_edge_count(S), len(S))
            assert dS * qs > k
            best_S, best_d = S, dS
            klo = math.floor(dS * qs)
        else:
            khi = k
    ok, S = _goldberg_test(n, eu, ev, w, deg_w, M, 2 * khi - 1, 2 * qs)
    tests += 1
    if ok:
        dS = Fraction(g.induced_edge_count(S), len(S))
        if dS > best_d:
            best_S, best_d = S, dS

    if canonical and n > 1:
        # force vertices in id order; stop as soon as the forced set is optimal
        pf = 2 * best_d.numerator * qs - best_d.denominator
        qf = 2 * best_d.denominator * qs
        forced: list[int] = []
        for v in range(n):
            if forced and Fraction(g.induced_edge_count(forced), len(forced)) == best_d:
                break
            ok, _ = _goldberg_test(n, eu, ev, w, deg_w, M, pf, qf, forced + [v])
            tests += 1
            if ok:
                forced.append(v)
        best_S = np.array(forced, dtype=np.int64)

    return DensityResult(tuple(int(x) for x in np.sort(best_S)), best_d,
                         "exact-mincut", {"n": n}, time.perf_counter() - t0,
                         {"cut_tests": tests})


def charikar_peel(g: ExplicitGraph) -> DensityResult:
    """Repeatedly remove a minimum-degree vertex; return the best prefix.

    Deterministic tie-break (degree, then id).  The best prefix is always
    within a factor two of the optimum.
    """
    t0 = time.perf_counter()
    n = g.n
    if n < 1:
        raise ValueError("graph has no vertices")
    adj = g.adjacency()
    deg = g.degrees().tolist()
    alive = [True] * n
    cur_m = g.m
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)

    best_d = Fraction(g.m, n)
    best_steps = 0
    removal: list[int] = []
    cur_n = n
    while cur_n > 1:
        d, v = heapq.heappop(heap)
        if not alive[v] or d != deg[v]:
            continue
        alive[v] = False
        removal.append(v)
        cur_n -= 1
        for u, wt in adj[v]:
            if alive[u]:
                deg[u] -= wt
                cur_m -= wt
                heapq.heappush(heap, (deg[u], u))
        dens = Fraction(cur_m, cur_n)
        if dens > best_d:
            best_d = dens
            best_steps = len(removal)
    removed = set(removal[:best_steps])
    subset = tuple(v for v in range(n) if v not in removed)
    return DensityResult(subset, best_d, "charikar-peel", {"n": n},
                         time.perf_counter() - t0)


def subsolver_densest(g: ExplicitGraph, quality_eps: float) -> DensityResult:
    """Densest subset at quality at least (1 - quality_eps); served by the
    exact solver, which trivially exceeds any required quality."""
    res = exact_densest(g, canonical=False)
    res.algorithm = "subsolver-exact"
    res.params["quality_eps"] = quality_eps
    res.info["quality"] = 1.0
    return res
