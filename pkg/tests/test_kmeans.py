"""Seeded Lloyd clustering, including the empty-cluster reseed rule."""

import numpy as np
import pytest

from skycover.kmeans import ClusterResult, KmeansParams, kmeans, reseed_empty_cluster


def random_points(n, seed, spread=1000.0):
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, spread, size=(n, 2))


class TestParams:
    @pytest.mark.parametrize("field,value", [
        ("n_clusters", 0),
        ("max_iter", 0),
        ("tolerance_m", 0.0),
    ])
    def test_invalid_fields_rejected(self, field, value):
        base = dict(n_clusters=2, max_iter=10, tolerance_m=1e-3)
        base[field] = value
        with pytest.raises(ValueError):
            KmeansParams(**base)


class TestKmeans:
    def test_two_points_one_cluster_centroid(self):
        res = kmeans([(0.0, 0.0), (2.0, 0.0)], KmeansParams(n_clusters=1), rng_seed=0)
        assert np.allclose(res.centers, [[1.0, 0.0]])
        assert res.membership.tolist() == [0, 0]

    def test_n_points_n_clusters_fixed_point(self):
        pts = np.array([[0.0, 0.0], [10.0, 0.0], [0.0, 10.0], [10.0, 10.0]])
        res = kmeans(pts, KmeansParams(n_clusters=4), rng_seed=3)
        assert sorted(map(tuple, res.centers.tolist())) == sorted(map(tuple, pts.tolist()))
        assert sorted(res.membership.tolist()) == [0, 1, 2, 3]

    def test_separated_blobs_recovered(self):
        rng = np.random.default_rng(42)
        blob_a = rng.normal((0.0, 0.0), 5.0, size=(100, 2))
        blob_b = rng.normal((1000.0, 1000.0), 5.0, size=(100, 2))
        pts = np.vstack([blob_a, blob_b])
        res = kmeans(pts, KmeansParams(n_clusters=2), rng_seed=1)
        labels = res.membership
        assert len(set(labels[:100].tolist())) == 1
        assert len(set(labels[100:].tolist())) == 1
        assert labels[0] != labels[100]

    def test_wcss_non_increasing(self):
        for seed in range(8):
            pts = random_points(60, seed)
            res = kmeans(pts, KmeansParams(n_clusters=4), rng_seed=seed + 100)
            wcss = np.array(res.wcss_per_iter)
            assert np.all(np.diff(wcss) <= 1e-6), "WCSS rose at seed %d" % seed

    def test_each_point_gets_nearest_center(self):
        for seed in range(6):
            pts = random_points(50, seed)
            res = kmeans(pts, KmeansParams(n_clusters=5), rng_seed=seed)
            for i, p in enumerate(pts):
                dists = np.sqrt(np.sum((res.centers - p) ** 2, axis=1))
                assert dists[res.membership[i]] <= dists.min() + 1e-9

    def test_centers_are_member_means(self):
        pts = random_points(80, 5)
        res = kmeans(pts, KmeansParams(n_clusters=3), rng_seed=9)
        for j in range(3):
            members = pts[res.membership == j]
            assert members.size, "cluster %d emptied" % j
            assert np.allclose(res.centers[j], members.mean(axis=0), atol=1e-2)

    def test_deterministic(self):
        pts = random_points(40, 11)
        a = kmeans(pts, KmeansParams(n_clusters=3), rng_seed=7)
        b = kmeans(pts, KmeansParams(n_clusters=3), rng_seed=7)
        assert np.array_equal(a.centers, b.centers)
        assert np.array_equal(a.membership, b.membership)
        assert a.wcss_per_iter == b.wcss_per_iter
        c = kmeans(pts, KmeansParams(n_clusters=3), rng_seed=8)
        assert not np.array_equal(a.centers, c.centers)

    def test_terminates_within_max_iter(self):
        pts = random_points(100, 2)
        params = KmeansParams(n_clusters=6, max_iter=7, tolerance_m=1e-12)
        res = kmeans(pts, params, rng_seed=0)
        assert res.iterations_used <= 7

    def test_fewer_points_than_clusters_rejected(self):
        with pytest.raises(ValueError):
            kmeans([(0.0, 0.0)], KmeansParams(n_clusters=2), rng_seed=0)

    def test_bad_shapes_rejected(self):
        with pytest.raises(ValueError):
            kmeans(np.zeros((4, 3)), KmeansParams(n_clusters=2), rng_seed=0)
        with pytest.raises(ValueError):
            kmeans(random_points(10, 0), KmeansParams(n_clusters=2), rng_seed=0,
                   initial_centers=np.zeros((3, 2)))


class TestReseed:
    def test_coincident_pair_terminates(self):
        pts = [(5.0, 5.0), (5.0, 5.0)]
        res = kmeans(pts, KmeansParams(n_clusters=2), rng_seed=0)
        assert np.allclose(res.centers, [[5.0, 5.0], [5.0, 5.0]])
        assert res.iterations_used >= 1

    def test_identity_when_no_empties(self):
        pts = random_points(30, 4)
        res = kmeans(pts, KmeansParams(n_clusters=3), rng_seed=2)
        assert reseed_empty_cluster(res, pts) is res

    def test_collinear_adversarial_init_fills_all(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
        degenerate = ClusterResult(
            centers=np.zeros((3, 2)),
            membership=np.zeros(3, dtype=int),
            iterations_used=0,
            wcss_per_iter=(),
        )
        fixed = reseed_empty_cluster(degenerate, pts)
        counts = np.bincount(fixed.membership, minlength=3)
        assert np.all(counts >= 1), "reseed left an empty cluster: %r" % counts.tolist()

    def test_adversarial_init_through_lloyd(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
        res = kmeans(pts, KmeansParams(n_clusters=3), rng_seed=0,
                     initial_centers=np.zeros((3, 2)))
        counts = np.bincount(res.membership, minlength=3)
        assert np.all(counts == 1)
