"""Seeded Lloyd clustering over vehicle plan-view positions.

Used to drop initial relay positions onto the demand pattern. Initial centers
are sampled from the points without replacement; an emptied cluster is
reseeded to the farthest point from its center, skipping points that already
coincide with a center so duplicates cannot be re-picked.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

COINCIDENT_EPS = 1e-9


@dataclass(frozen=True)
class KmeansParams:
    n_clusters: int
    max_iter: int = 100
    tolerance_m: float = 1e-3

    def __post_init__(self) -> None:
        if self.n_clusters < 1:
            raise ValueError("n_clusters must be >= 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.tolerance_m <= 0:
            raise ValueError("tolerance_m must be positive")


@dataclass(frozen=True)
class ClusterResult:
    centers: np.ndarray  # (k, 2)
    membership: np.ndarray  # (n,)
    iterations_used: int
    wcss_per_iter: tuple[float, ...]


def _distances_sq(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centers[None, :, :]
    return np.sum(diff * diff, axis=-1)


def _reseed_target(points: np.ndarray, centers: np.ndarray, empty_idx: int) -> np.ndarray:
    """Pick the replacement point for an emptied cluster center."""
    dist = np.sqrt(np.sum((points - centers[empty_idx]) ** 2, axis=-1))
    near_any_center = np.min(_distances_sq(points, centers), axis=1) < COINCIDENT_EPS**2
    candidates = np.where(near_any_center, -np.inf, dist)
    if np.all(np.isneginf(candidates)):
        return points[int(np.argmax(dist))].copy()
    return points[int(np.argmax(candidates))].copy()


def _fill_empty_clusters(points: np.ndarray, centers: np.ndarray, membership: np.ndarray):
    counts = np.bincount(membership, minlength=centers.shape[0])
    empties = np.flatnonzero(counts == 0)
    if empties.size == 0:
        return centers, membership
    centers = centers.copy()
    for e in empties:
        centers[e] = _reseed_target(points, centers, int(e))
    membership = np.argmin(_distances_sq(points, centers), axis=1)
    return centers, membership


def reseed_empty_cluster(result: ClusterResult, points, rng=None) -> ClusterResult:
    """Public wrapper over the empty-cluster rule; identity when none empty.

    rng is accepted for interface stability; the current rule (farthest
    point, skipping center-coincident points) is deterministic.
    """
    points = np.asarray(points, dtype=float)
    centers, membership = _fill_empty_clusters(points, result.centers, result.membership)
    if centers is result.centers:
        return result
    return ClusterResult(
        centers=centers,
        membership=membership,
        iterations_used=result.iterations_used,
        wcss_per_iter=result.wcss_per_iter,
    )


def kmeans(
    points,
    params: KmeansParams,
    rng_seed: int,
    initial_centers: Optional[np.ndarray] = None,
) -> ClusterResult:
    """Lloyd iteration until the largest centroid shift drops below tolerance.

    initial_centers overrides the seeded draw (adversarial inits in tests).
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValueError("points must have shape (n, 2)")
    n = points.shape[0]
    k = params.n_clusters
    if n < k:
        raise ValueError("need at least %d points for %d clusters, got %d" % (k, k, n))

    rng = np.random.default_rng(rng_seed)
    if initial_centers is None:
        centers = points[rng.choice(n, size=k, replace=False)].astype(float).copy()
    else:
        centers = np.array(initial_centers, dtype=float)
        if centers.shape != (k, 2):
            raise ValueError("initial_centers must have shape (%d, 2)" % k)

    membership = np.zeros(n, dtype=int)
    wcss_per_iter = []
    iterations = 0
    for _ in range(params.max_iter):
        iterations += 1
        d2 = _distances_sq(points, centers)
        membership = np.argmin(d2, axis=1)
        centers, membership = _fill_empty_clusters(points, centers, membership)
        wcss_per_iter.append(float(np.sum(_distances_sq(points, centers)[np.arange(n), membership])))

        new_centers = centers.copy()
        for j in range(k):
            mask = membership == j
            if np.any(mask):
                new_centers[j] = points[mask].mean(axis=0)
        shift = float(np.max(np.sqrt(np.sum((new_centers - centers) ** 2, axis=-1))))
        centers = new_centers
        if shift < params.tolerance_m:
            break

    membership = np.argmin(_distances_sq(points, centers), axis=1)
    return ClusterResult(
        centers=centers,
        membership=membership.astype(int),
        iterations_used=iterations,
        wcss_per_iter=tuple(wcss_per_iter),
    )
