"""Disk primitives, the intersection predicate, instance generation and file I/O.

Disks are closed, so tangent disks and fully contained disks both count as
intersecting.  The predicate is evaluated in floating point, with an exact
rational re-evaluation whenever the float margin is too thin to trust (floats
are dyadic rationals, so the fallback is lossless).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

# Relative margin below which the predicate re-runs in exact arithmetic.
TANGENCY_RTOL = 1e-12


@dataclass(frozen=True)
class Disk:
    """Closed disk with a stable, instance-unique integer id."""

    id: int
    cx: float
    cy: float
    r: float

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"disk id must be non-negative, got {self.id}")
        if not (math.isfinite(self.cx) and math.isfinite(self.cy)):
            raise ValueError(f"disk {self.id}: center must be finite")
        if not (math.isfinite(self.r) and self.r > 0):
            raise ValueError(f"disk {self.id}: radius must be positive and finite, got {self.r}")


@dataclass(frozen=True)
class Instance:
    """An ordered collection of disks with ids exactly 0..n-1."""

    disks: tuple[Disk, ...]
    name: str = ""

    def __post_init__(self):
        ids = [d.id for d in self.disks]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate disk ids in instance")
        if ids and (min(ids) != 0 or max(ids) != len(ids) - 1):
            raise ValueError("disk ids must be exactly 0..n-1")
        if ids != sorted(ids):
            object.__setattr__(self, "disks", tuple(sorted(self.disks, key=lambda d: d.id)))

    @property
    def n(self) -> int:
        return len(self.disks)

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(ids, cx, cy, r) as parallel numpy arrays, ordered by id."""
        ids = np.array([d.id for d in self.disks], dtype=np.int64)
        cx = np.array([d.cx for d in self.disks], dtype=np.float64)
        cy = np.array([d.cy for d in self.disks], dtype=np.float64)
        r = np.array([d.r for d in self.disks], dtype=np.float64)
        return ids, cx, cy, r

    def subset(self, ids: Iterable[int]) -> tuple[Disk, ...]:
        """The given disks, original ids preserved (not a dense re-labelling)."""
        return tuple(self.disks[i] for i in sorted(ids))


def _intersects_exact(acx, acy, ar, bcx, bcy, br) -> bool:
    dx = Fraction(bcx) - Fraction(acx)
    dy = Fraction(bcy) - Fraction(acy)
    s = Fraction(ar) + Fraction(br)
    return dx * dx + dy * dy <= s * s


def intersects(a: Disk, b: Disk) -> bool:
    """True iff the closed disks share at least one point."""
    dx = b.cx - a.cx
    dy = b.cy - a.cy
    lhs = dx * dx + dy * dy
    s = a.r + b.r
    rhs = s * s
    if abs(lhs - rhs) <= TANGENCY_RTOL * max(lhs, rhs):
        return _intersects_exact(a.cx, a.cy, a.r, b.cx, b.cy, b.r)
    return lhs <= rhs


def intersect_mask(cx: np.ndarray, cy: np.ndarray, r: np.ndarray,
                   qx: float, qy: float, qr: float) -> np.ndarray:
    """Vectorized `intersects` of many disks against one query disk.

    Applies the same exact-arithmetic tie resolution as the scalar predicate,
    so index queries, the sweep and the naive oracle all agree bit-for-bit.
    """
    dx = cx - qx
    dy = cy - qy
    lhs = dx * dx + dy * dy
    s = r + qr
    rhs = s * s
    mask = lhs <= rhs
    near = np.abs(lhs - rhs) <= TANGENCY_RTOL * np.maximum(lhs, rhs)
    if near.any():
        for i in np.flatnonzero(near):
            mask[i] = _intersects_exact(float(cx[i]), float(cy[i]), float(r[i]), qx, qy, qr)
    return mask


def generate(kind: str, n: int, *, seed: int = 0, side: float = 10.0,
             rmin: float = 0.5, rmax: float = 1.0, r: float = 1.0,
             clusters: int = 5, spread: float = 1.0, name: str | None = None) -> Instance:
    """Generate named instance families; deterministic for a fixed seed.

    kinds:
      uniform   -- centers uniform in [0, side]^2, radii uniform in [rmin, rmax]
      clustered -- centers gaussian around `clusters` seeds in the square
      clique    -- n disks of radius r all containing a common point
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    if kind == "clique":
        if r <= 0:
            raise ValueError("clique radius must be positive")
        ang = rng.uniform(0.0, 2 * math.pi, n)
        rad = 0.9 * r * np.sqrt(rng.uniform(0.0, 1.0, n))
        cx, cy = rad * np.cos(ang), rad * np.sin(ang)
        rr = np.full(n, float(r))
    elif kind in ("uniform", "clustered"):
        if rmin <= 0:
            raise ValueError(f"rmin must be positive, got {rmin}")
        if rmax < rmin:
            raise ValueError(f"rmax must be >= rmin, got rmax={rmax} rmin={rmin}")
        if kind == "uniform":
            cx = rng.uniform(0.0, side, n)
            cy = rng.uniform(0.0, side, n)
        else:
            if clusters < 1:
                raise ValueError("clusters must be >= 1")
            seeds_xy = rng.uniform(0.0, side, (clusters, 2))
            which = rng.integers(0, clusters, n)
            cx = seeds_xy[which, 0] + rng.normal(0.0, spread, n)
            cy = seeds_xy[which, 1] + rng.normal(0.0, spread, n)
        rr = rng.uniform(rmin, rmax, n)
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    disks = tuple(Disk(i, float(cx[i]), float(cy[i]), float(rr[i])) for i in range(n))
    return Instance(disks, name or f"{kind}-{n}-s{seed}")


def five_disk_instance() -> Instance:
    """Five disks whose intersection graph has six edges, five of them among
    disks 0..3; the densest subset is {0, 1, 2, 3} with density exactly 5/4."""
    disks = (
        Disk(0, 0.0, 0.0, 2.0),
        Disk(1, 2.5, 0.0, 2.0),
        Disk(2, 1.25, 2.0, 1.0),
        Disk(3, 1.25, -2.0, 1.0),
        Disk(4, 1.25, -4.0, 1.2),
    )
    return Instance(disks, "five-disk-demo")


def write_instance(inst: Instance, path: str | Path) -> None:
    """One `id,cx,cy,r` line per disk; floats via repr so read() round-trips."""
    path = Path(path)
    lines = [f"# name: {inst.name}"] if inst.name else []
    lines += [f"{d.id},{d.cx!r},{d.cy!r},{d.r!r}" for d in inst.disks]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_instance(path: str | Path) -> Instance:
    """Parse an instance file; raises ValueError naming the offending line."""
    path = Path(path)
    name = path.stem
    disks = []
    seen = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("name:"):
                name = body[len("name:"):].strip()
            continue
        parts = line.split(",")
        if len(parts) != 4:
            raise ValueError(f"{path}:{lineno}: expected 'id,cx,cy,r', got {raw!r}")
        try:
            did = int(parts[0])
            cx, cy, r = (float(p) for p in parts[1:])
        except ValueError as e:
            raise ValueError(f"{path}:{lineno}: {e}") from None
        if did in seen:
            raise ValueError(f"{path}:{lineno}: duplicate disk id {did}")
        seen.add(did)
        try:
            disks.append(Disk(did, cx, cy, r))
        except ValueError as e:
            raise ValueError(f"{path}:{lineno}: {e}") from None
    try:
        return Instance(tuple(disks), name)
    except ValueError as e:
        raise ValueError(f"{path}: {e}") from None
