import math

import numpy as np
import pytest

from diskdense import Disk, ExplicitGraph, Instance


def star_instance(leaves: int = 20) -> Instance:
    """One big disk intersecting `leaves` pairwise-disjoint small disks: the
    intersection graph is a star with exactly `leaves` edges."""
    disks = [Disk(0, 0.0, 0.0, 10.0)]
    for k in range(leaves):
        ang = 2 * math.pi * k / leaves
        disks.append(Disk(k + 1, 10.4 * math.cos(ang), 10.4 * math.sin(ang), 0.5))
    return Instance(tuple(disks), f"star-{leaves}")


def random_graph(rng: np.random.Generator, n: int, p: float) -> ExplicitGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return ExplicitGraph(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
