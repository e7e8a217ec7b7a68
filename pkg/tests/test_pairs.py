import numpy as np
import pytest

from diskdense import (Disk, Instance, ReportIndex, all_pairs, all_pairs_naive,
                       five_disk_instance, generate)


def test_empty_instance():
    assert len(all_pairs(Instance(()))) == 0
    assert len(all_pairs_naive(Instance(()))) == 0


def test_single_disk():
    inst = Instance((Disk(0, 0.0, 0.0, 1.0),))
    assert len(all_pairs_naive(inst)) == 0
    assert len(all_pairs(inst)) == 0


def test_three_mutually_tangent_unit_disks():
    inst = Instance((
        Disk(0, 0.0, 0.0, 1.0),
        Disk(1, 2.0, 0.0, 1.0),
        Disk(2, 1.0, 3 ** 0.5, 1.0),
    ))
    assert all_pairs(inst).as_set() == {(0, 1), (0, 2), (1, 2)}


def test_clique_has_all_pairs():
    inst = generate("clique", 6, r=1.0, seed=2)
    assert len(all_pairs_naive(inst)) == 15
    assert len(all_pairs(inst)) == 15


def test_five_disk_demo_edge_structure():
    inst = five_disk_instance()
    pl = all_pairs_naive(inst)
    assert len(pl) == 6
    inner = {p for p in pl.as_set() if max(p) <= 3}
    assert len(inner) == 5


def test_sweep_matches_naive_on_uniform_500():
    inst = generate("uniform", 500, side=20.0, rmin=0.5, rmax=1.0, seed=3)
    assert all_pairs(inst) == all_pairs_naive(inst)


@pytest.mark.parametrize("seed", range(6))
def test_sweep_matches_naive_mixed_radii(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 400))
    side = float(rng.uniform(3.0, 40.0))
    rmax = float(rng.uniform(0.2, 6.0))
    inst = generate("uniform", n, side=side, rmin=rmax / 10, rmax=rmax, seed=seed + 100)
    assert all_pairs(inst).as_set() == all_pairs_naive(inst).as_set()


def test_containment_pairs_are_found():
    inst = Instance((
        Disk(0, 0.0, 0.0, 5.0),
        Disk(1, 0.5, 0.0, 1.0),     # strictly inside disk 0
        Disk(2, 20.0, 0.0, 1.0),
    ))
    assert all_pairs(inst).as_set() == {(0, 1)}


def test_pairlist_is_sorted_unique_and_ordered():
    inst = generate("uniform", 200, side=8.0, seed=4)
    pl = all_pairs(inst)
    arr = pl.pairs
    assert (arr[:, 0] < arr[:, 1]).all()
    keys = arr[:, 0] * inst.n + arr[:, 1]
    assert (np.diff(keys) > 0).all()


def test_pair_count_equals_half_degree_sum():
    inst = generate("uniform", 300, side=10.0, seed=6)
    idx = ReportIndex(inst.disks)
    total = sum(idx.degree(d) for d in inst.disks)
    assert total % 2 == 0
    assert len(all_pairs(inst)) == total // 2
