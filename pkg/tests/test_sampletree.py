import math
from collections import Counter

import numpy as np
import pytest
from scipy.stats import chi2

from diskdense import Disk, EstimateSample, SampleTree, generate, intersects


def tangent_pair():
    return (Disk(0, 0.0, 0.0, 1.0), Disk(1, 2.0, 0.0, 1.0))


class TestBuild:
    def test_single_disk_tree_is_root_only(self):
        tree = SampleTree([Disk(0, 0.0, 0.0, 1.0)], seed=1)
        assert tree.depth == 0
        assert len(tree.levels) == 1
        assert list(tree.root.ids) == [0]

    def test_levels_partition_all_ids(self):
        inst = generate("uniform", 8, side=5.0, seed=2)
        tree = SampleTree(inst.disks, seed=3)
        assert tree.depth == 3
        for d in range(tree.depth + 1):
            nodes = tree.levels[d]
            assert len(nodes) <= 2 ** d
            members = np.concatenate([idx.ids for idx in nodes.values()])
            assert sorted(members.tolist()) == list(range(8))

    def test_children_partition_parents(self):
        inst = generate("uniform", 64, side=6.0, seed=5)
        tree = SampleTree(inst.disks, seed=7)
        for d in range(tree.depth):
            for prefix in tree.levels[d]:
                parent = set(tree.members(d, prefix).tolist())
                left = set(tree.members(d + 1, prefix << 1).tolist())
                right = set(tree.members(d + 1, (prefix << 1) | 1).tolist())
                assert left | right == parent
                assert not (left & right)

    def test_membership_recomputable_from_codes(self):
        inst = generate("uniform", 256, side=12.0, seed=11)
        tree = SampleTree(inst.disks, seed=13)
        ids, _, _, _ = inst.arrays
        for d in range(tree.depth + 1):
            shift = tree.depth - d
            for prefix, idx in tree.levels[d].items():
                expected = np.sort(ids[(tree.codes >> shift) == prefix])
                assert np.array_equal(np.sort(idx.ids), expected)

    def test_counts_non_increasing_along_paths(self):
        inst = generate("uniform", 128, side=6.0, seed=17)
        tree = SampleTree(inst.disks, seed=19)
        sizes_by_level = [
            {p: len(idx.ids) for p, idx in tree.levels[d].items()}
            for d in range(tree.depth + 1)
        ]
        for d in range(tree.depth):
            for p, sz in sizes_by_level[d].items():
                child_sum = (sizes_by_level[d + 1].get(p << 1, 0)
                             + sizes_by_level[d + 1].get((p << 1) | 1, 0))
                assert child_sum == sz

    def test_deterministic_for_seed(self):
        inst = generate("uniform", 50, side=5.0, seed=1)
        a = SampleTree(inst.disks, seed=42)
        b = SampleTree(inst.disks, seed=42)
        assert np.array_equal(a.codes, b.codes)

    def test_rejects_empty_and_bad_c(self):
        with pytest.raises(ValueError):
            SampleTree([], seed=0)
        with pytest.raises(ValueError):
            SampleTree(tangent_pair(), c=0.0)


class TestQuery:
    def test_disjoint_query_gives_zero_exact_no_sample(self):
        inst = generate("clique", 16, r=1.0, seed=1)
        tree = SampleTree(inst.disks, seed=2)
        res = tree.query(Disk(99, 50.0, 50.0, 1.0), 0.25, np.random.default_rng(0))
        assert res == EstimateSample(0, None, 0, True)

    def test_small_count_is_exact_with_uniform_sample(self):
        # psi_eps exceeds n, so the root answers: exact count, exact uniformity
        inst = generate("clique", 16, r=1.0, seed=3)
        tree = SampleTree(inst.disks, seed=4)
        rng = np.random.default_rng(5)
        q = Disk(99, 0.0, 0.0, 0.5)
        draws = 5000
        counts = Counter()
        for _ in range(draws):
            res = tree.query(q, 0.25, rng)
            assert res.exact and res.j == 0 and res.estimate == 16
            counts[res.sample] += 1
        assert set(counts) == set(range(16))
        expected = draws / 16
        stat = sum((c - expected) ** 2 / expected for c in counts.values())
        assert stat < chi2.ppf(0.999, df=15)

    def test_monotone_intersection_counts_down_the_path(self, rng):
        inst = generate("uniform", 200, side=8.0, seed=21)
        tree = SampleTree(inst.disks, seed=23)
        for _ in range(20):
            q = Disk(999, float(rng.uniform(0, 8)), float(rng.uniform(0, 8)),
                     float(rng.uniform(0.3, 2.0)))
            counts = tree.path_counts(q)
            assert all(a >= b for a, b in zip(counts, counts[1:]))

    def test_estimate_within_band_on_clique_4096(self):
        inst = generate("clique", 4096, r=1.0, seed=31)
        tree = SampleTree(inst.disks, c=2.0, seed=37)
        rng = np.random.default_rng(41)
        q = Disk(9999, 0.0, 0.0, 1.0)
        beta = 4096
        bad = 0
        draws = 10 ** 4
        js = Counter()
        for _ in range(draws):
            res = tree.query(q, 0.25, rng)
            js[res.j] += 1
            if not (0.75 * beta < res.estimate < 1.25 * beta):
                bad += 1
        assert bad / draws <= 0.05
        assert max(js) >= 1      # the estimator really used deeper levels

    def test_approx_count_matches_query_distribution(self):
        inst = generate("clique", 64, r=1.0, seed=43)
        tree = SampleTree(inst.disks, seed=47)
        est, exact = tree.approx_count(inst.disks[0], 0.25, np.random.default_rng(1))
        assert est == 64 and exact

    def test_eps_domain_enforced(self):
        tree = SampleTree(tangent_pair(), seed=1)
        with pytest.raises(ValueError):
            tree.query(tangent_pair()[0], 0.6, np.random.default_rng(0))
        with pytest.raises(ValueError):
            tree.query(tangent_pair()[0], 0.0, np.random.default_rng(0))

    def test_seed_replay_reproduces_query(self):
        inst = generate("clique", 512, r=1.0, seed=51)
        tree = SampleTree(inst.disks, seed=53)
        q = Disk(9999, 0.0, 0.0, 1.0)
        a = [tree.query(q, 0.45, np.random.default_rng(7)) for _ in range(5)]
        b = [tree.query(q, 0.45, np.random.default_rng(7)) for _ in range(5)]
        assert a == b

    def test_level_choice_uniform_over_nonempty_slots(self):
        # on a clique the sampled element reveals the chosen slot
        inst = generate("clique", 512, r=1.0, seed=61)
        tree = SampleTree(inst.disks, c=2.0, seed=67)
        rng = np.random.default_rng(71)
        q = Disk(9999, 0.0, 0.0, 1.0)
        probe = tree.query(q, 0.45, rng)
        j = probe.j
        assert j >= 2
        id_to_slot = {}
        for prefix in tree.levels[j]:
            for i in tree.members(j, prefix):
                id_to_slot[int(i)] = prefix
        draws = 4000
        counts = Counter()
        for _ in range(draws):
            res = tree.query(q, 0.45, rng)
            assert res.j == j
            counts[id_to_slot[res.sample]] += 1
        slots = sorted(tree.levels[j])
        expected = draws / len(slots)
        stat = sum((counts.get(s, 0) - expected) ** 2 / expected for s in slots)
        assert stat < chi2.ppf(0.999, df=len(slots) - 1)


class TestSampleExcluding:
    def test_lonely_disk_returns_none(self):
        disks = (Disk(0, 0.0, 0.0, 1.0), Disk(1, 10.0, 0.0, 1.0))
        tree = SampleTree(disks, seed=1)
        got = tree.sample_excluding(disks[0], 0, 0.25, np.random.default_rng(2))
        assert got is None

    def test_tangent_pair_always_the_other(self):
        disks = tangent_pair()
        tree = SampleTree(disks, seed=3)
        rng = np.random.default_rng(4)
        assert all(tree.sample_excluding(disks[0], 0, 0.25, rng) == 1
                   for _ in range(50))

    def test_clique64_total_variation_bound(self):
        inst = generate("clique", 64, r=1.0, seed=5)
        tree = SampleTree(inst.disks, c=2.0, seed=6)
        rng = np.random.default_rng(7)
        q = inst.disks[0]
        draws = 10 ** 4
        counts = Counter(tree.sample_excluding(q, 0, 0.25, rng) for _ in range(draws))
        assert set(counts) <= set(range(1, 64))
        tv = 0.5 * sum(abs(counts.get(i, 0) / draws - 1 / 63) for i in range(1, 64))
        assert tv <= 0.25 + 3 * math.sqrt(math.log(64) / draws)

    def test_samples_always_intersect_query(self, rng):
        inst = generate("uniform", 150, side=6.0, seed=71)
        tree = SampleTree(inst.disks, seed=73)
        for d in inst.disks[::10]:
            got = tree.sample_excluding(d, d.id, 0.25, rng)
            if got is not None:
                assert intersects(inst.disks[got], d)
                assert got != d.id

    def test_batch_matches_sequential_distribution(self):
        inst = generate("clique", 256, r=1.0, seed=81)
        tree = SampleTree(inst.disks, c=2.0, seed=83)
        q = inst.disks[0]
        draws = 3000
        seq_rng = np.random.default_rng(85)
        seq = Counter(tree.sample_excluding(q, 0, 0.45, seq_rng)
                      for _ in range(draws))
        batch = Counter(tree.batch_sample_excluding(
            q, 0, 0.45, np.random.default_rng(87), draws).tolist())
        assert set(seq) <= set(range(1, 256))
        assert set(batch) <= set(range(1, 256))
        tv_seq = 0.5 * sum(abs(seq.get(i, 0) / draws - 1 / 255) for i in range(1, 256))
        tv_batch = 0.5 * sum(abs(batch.get(i, 0) / draws - 1 / 255) for i in range(1, 256))
        noise = 3 * math.sqrt(math.log(256) / draws)
        assert tv_seq <= 0.45 + noise
        assert tv_batch <= 0.45 + noise
        assert abs(tv_seq - tv_batch) <= noise + 0.08

    def test_per_object_selection_frequency_band(self):
        # near-uniformity: every neighbor's frequency within (1 +/- eps)/beta
        # plus four sigmas of binomial noise
        inst = generate("clique", 512, r=1.0, seed=91)
        tree = SampleTree(inst.disks, c=2.0, seed=93)
        q = inst.disks[0]
        draws = 50_000
        eps = 0.45
        got = tree.batch_sample_excluding(q, 0, eps, np.random.default_rng(95), draws)
        counts = np.bincount(got, minlength=512)[1:]
        beta = 511
        p = counts / draws
        sigma = np.sqrt((1 / beta) * (1 - 1 / beta) / draws)
        assert (p >= (1 - eps) / beta - 4 * sigma).all()
        assert (p <= (1 + eps) / beta + 4 * sigma).all()
