import numpy as np
import pytest

from diskdense import Disk, ReportIndex, generate, intersects
from diskdense.geom import intersect_mask


def oracle_ids(disks, q):
    return np.sort(np.array([d.id for d in disks if intersects(d, q)], dtype=np.int64))


class TestReport:
    def test_single_disk_reports_itself(self):
        d = Disk(0, 1.0, 2.0, 0.5)
        idx = ReportIndex([d])
        out = idx.report(d)
        assert not out.overflowed
        assert list(out.ids) == [0]

    def test_clique_member_sees_everyone(self):
        inst = generate("clique", 10, r=1.0, seed=1)
        idx = ReportIndex(inst.disks)
        out = idx.report(inst.disks[3])
        assert out.count_seen == 10
        assert list(out.ids) == list(range(10))

    def test_disjoint_query_full_empty(self):
        inst = generate("clique", 10, r=1.0, seed=1)
        idx = ReportIndex(inst.disks)
        out = idx.report(Disk(99, 100.0, 100.0, 1.0))
        assert not out.overflowed and len(out.ids) == 0

    def test_clique_overflows_small_limit(self):
        inst = generate("clique", 10, r=1.0, seed=1)
        idx = ReportIndex(inst.disks)
        out = idx.report(inst.disks[0], limit=4)
        assert out.overflowed and out.count_seen > 4
        assert out.ids is None

    def test_uniform_300_matches_predicate_scan(self, rng):
        inst = generate("uniform", 300, side=12.0, rmin=0.3, rmax=2.5, seed=5)
        idx = ReportIndex(inst.disks)
        for _ in range(50):
            q = Disk(1000, float(rng.uniform(-2, 14)), float(rng.uniform(-2, 14)),
                     float(rng.uniform(0.1, 3.0)))
            out = idx.report(q)
            assert not out.overflowed
            assert np.array_equal(out.ids, oracle_ids(inst.disks, q))

    def test_limit_boundary_abort_only_when_strictly_exceeding(self, rng):
        inst = generate("uniform", 300, side=10.0, seed=8)
        idx = ReportIndex(inst.disks)
        checked = 0
        for _ in range(40):
            q = Disk(1000, float(rng.uniform(0, 10)), float(rng.uniform(0, 10)),
                     float(rng.uniform(0.5, 2.0)))
            true = len(oracle_ids(inst.disks, q))
            if true == 0:
                continue
            checked += 1
            assert not idx.report(q, limit=true).overflowed
            assert idx.report(q, limit=true - 1).overflowed
        assert checked > 10

    def test_overflow_iff_true_count_exceeds_limit(self, rng):
        inst = generate("uniform", 200, side=6.0, rmin=0.4, rmax=1.5, seed=13)
        idx = ReportIndex(inst.disks)
        for _ in range(30):
            q = Disk(500, float(rng.uniform(0, 6)), float(rng.uniform(0, 6)),
                     float(rng.uniform(0.2, 2.0)))
            true = len(oracle_ids(inst.disks, q))
            for limit in {0, 1, max(true - 1, 0), true, true + 1}:
                out = idx.report(q, limit=limit)
                assert out.overflowed == (true > limit)
                if out.overflowed:
                    assert out.count_seen > limit


class TestDegree:
    def test_singleton_degree_zero(self):
        d = Disk(0, 0.0, 0.0, 1.0)
        assert ReportIndex([d]).degree(d) == 0

    def test_clique_degree(self):
        inst = generate("clique", 10, r=1.0, seed=4)
        idx = ReportIndex(inst.disks)
        assert idx.degree(inst.disks[7]) == 9

    def test_uniform_degree_matches_oracle(self):
        inst = generate("uniform", 300, side=10.0, seed=2)
        idx = ReportIndex(inst.disks)
        for d in inst.disks[::17]:
            expected = sum(1 for o in inst.disks if o.id != d.id and intersects(o, d))
            assert idx.degree(d) == expected

    def test_unindexed_disk_is_an_error(self):
        inst = generate("uniform", 20, side=5.0, seed=2)
        idx = ReportIndex(inst.disks[:10])
        with pytest.raises(KeyError):
            idx.degree(inst.disks[15])


class TestStructure:
    def test_empty_build_rejected(self):
        with pytest.raises(ValueError):
            ReportIndex([])

    def test_every_disk_in_exactly_one_class_and_cell(self):
        inst = generate("uniform", 400, side=15.0, rmin=0.1, rmax=9.0, seed=3)
        idx = ReportIndex(inst.disks)
        assert idx.classes is not None
        seen = []
        for cls in idx.classes:
            assert (cls.r <= cls.side).all()
            assert (cls.r > cls.side / 2).all()
            total = sum(hi - lo for lo, hi in cls.cell_map.values())
            assert total == len(cls.ids)
            seen.extend(cls.ids.tolist())
        assert sorted(seen) == list(range(400))

    def test_result_independent_of_bucketing(self, rng):
        # tiny brute path vs grid path must agree on identical content
        inst = generate("uniform", 33, side=4.0, rmin=0.2, rmax=3.0, seed=6)
        idx_grid = ReportIndex(inst.disks)
        import diskdense.report as report_mod
        old = report_mod._TINY
        try:
            report_mod._TINY = 64
            idx_tiny = ReportIndex(inst.disks)
        finally:
            report_mod._TINY = old
        assert idx_grid.classes is not None and idx_tiny.classes is None
        for _ in range(25):
            q = Disk(77, float(rng.uniform(0, 4)), float(rng.uniform(0, 4)),
                     float(rng.uniform(0.1, 2.0)))
            a = idx_grid.report(q)
            b = idx_tiny.report(q)
            assert np.array_equal(a.ids, b.ids)

    def test_cells_inspected_cost_bound(self, rng):
        inst = generate("uniform", 5000, side=70.0, rmin=0.26, rmax=0.5, seed=9)
        idx = ReportIndex(inst.disks)
        assert idx.classes is not None and len(idx.classes) == 1
        cls = idx.classes[0]
        s = cls.side
        for _ in range(40):
            qr = float(rng.uniform(0.1, 20.0))
            qx = float(rng.uniform(0, 70))
            qy = float(rng.uniform(0, 70))
            _, inspected = cls.candidate_slices(qx, qy, qr)
            bound = 4.0 * ((qr + 2 * s) / s) ** 2 + 16
            assert inspected <= bound
            assert inspected <= len(cls.occ_ix)
