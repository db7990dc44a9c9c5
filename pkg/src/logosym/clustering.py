"""Seeded K-means (Lloyd iterations) over feature vectors.

Each restart draws k distinct samples as initial centroids from a seeded
generator, runs Lloyd iterations to convergence, and the lowest-SSE restart
wins; a single explicit initial-centroid matrix can be passed instead, which
disables restarts. Empty clusters are repaired by donating the point
currently farthest from its centroid, which keeps the per-iteration SSE
non-increasing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ClusteringResult:
    assignments: np.ndarray      # (n,) cluster index per sample
    centroids: np.ndarray        # (k, d)
    sse: float                   # sum of squared distances to assigned centroids
    iterations: int
    sse_history: list[float] = field(default_factory=list)  # SSE after each iteration

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """(n, k) matrix of squared Euclidean distances."""
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def _lloyd(x: np.ndarray, k: int, centroids: np.ndarray,
           max_iter: int, tol: float) -> ClusteringResult:
    n = x.shape[0]
    assignments = np.zeros(n, dtype=np.intp)
    sse = float("inf")
    history: list[float] = []
    iterations = 0

    for iterations in range(1, max_iter + 1):
        d2 = _squared_distances(x, centroids)
        assignments = d2.argmin(axis=1)
        costs = d2[np.arange(n), assignments]

        # Repair: give each empty cluster the globally worst-fitting point
        # from a cluster that can spare one.
        counts = np.bincount(assignments, minlength=k)
        for j in np.flatnonzero(counts == 0):
            movable = counts[assignments] > 1
            donor = np.flatnonzero(movable)[costs[movable].argmax()]
            counts[assignments[donor]] -= 1
            assignments[donor] = j
            counts[j] = 1
            costs[donor] = 0.0

        new_centroids = np.empty_like(centroids)
        for j in range(k):
            new_centroids[j] = x[assignments == j].mean(axis=0)

        sse = float(((x - new_centroids[assignments]) ** 2).sum())
        history.append(sse)
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids
        if shift < tol:
            break

    return ClusteringResult(assignments=assignments, centroids=centroids,
                            sse=sse, iterations=iterations, sse_history=history)


def kmeans(points: np.ndarray, k: int, seed: int = 0, max_iter: int = 100,
           tol: float = 1e-6, init: np.ndarray | None = None,
           n_init: int = 10) -> ClusteringResult:
    """Cluster n x d points into k groups with squared Euclidean distance.

    Each run terminates when the largest centroid displacement drops below
    `tol` or after `max_iter` iterations; the best of `n_init` seeded
    restarts is returned. Deterministic for a given seed. Passing explicit
    `init` centroids runs exactly once from them.
    """
    x = np.asarray(points, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError(f"points must be 2-D, got ndim={x.ndim}")
    n, d = x.shape
    if not np.all(np.isfinite(x)):
        raise ValueError("points contain non-finite values")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > n:
        raise ValueError(f"k={k} exceeds sample count n={n}")

    if init is not None:
        centroids = np.array(init, dtype=np.float64)
        if centroids.shape != (k, d):
            raise ValueError(f"init centroids must be {(k, d)}, got {centroids.shape}")
        return _lloyd(x, k, centroids, max_iter, tol)

    if n_init < 1:
        raise ValueError(f"n_init must be >= 1, got {n_init}")
    rng = np.random.default_rng(seed)
    best: ClusteringResult | None = None
    for _ in range(n_init):
        centroids = x[rng.choice(n, size=k, replace=False)].copy()
        result = _lloyd(x, k, centroids, max_iter, tol)
        if best is None or result.sse < best.sse:
            best = result
    return best


def save_centroids_csv(result: ClusteringResult, path) -> None:
    """Debug dump: k rows by d columns of centroid coordinates."""
    np.savetxt(path, result.centroids, delimiter=",")
