"""Classifiers: the interval acceptance-count model and two 1-NN baselines.

A crisp test vector is scored against every representative by counting how
many of its features fall inside the representative's intervals (inclusive on
both ends). The predicted class is the class of the representative with the
highest count; ties across classes go to the class holding the most tied
representatives, then to the smallest class index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clustering import kmeans
from .errors import InfeasibleError
from .symbolic import ClusterRepresentative, ReferenceMatrix


def similarity(value: float, lower: float, upper: float) -> int:
    """1 if value lies in [lower, upper] (boundaries included), else 0."""
    return 1 if lower <= value <= upper else 0


def acceptance_count(sample: np.ndarray, rep: ClusterRepresentative) -> int:
    """Number of features of `sample` inside the representative's intervals."""
    s = np.asarray(sample, dtype=np.float64)
    if s.shape != rep.lower.shape:
        raise ValueError(f"sample has {s.shape[0]} features, representative has {rep.d}")
    return int(((s >= rep.lower) & (s <= rep.upper)).sum())


@dataclass(frozen=True)
class ClassificationOutcome:
    predicted_class: int
    best_representative: tuple[int, int]   # (class_label, cluster_index)
    acceptance_counts: np.ndarray          # (k*m,), matrix order
    tie: bool                              # max count shared across classes?


def resolve_prediction(counts: np.ndarray, rep_classes: np.ndarray) -> tuple[int, bool, int]:
    """Argmax with the deterministic tie policy.

    Returns (predicted class, cross-class-tie flag, index of the winning
    representative). Any strictly increasing transform of the counts leaves
    the outcome unchanged.
    """
    counts = np.asarray(counts)
    best = counts.max()
    tied = np.flatnonzero(counts == best)
    tied_classes = rep_classes[tied]
    classes, votes = np.unique(tied_classes, return_counts=True)
    tie = classes.size > 1
    # Most tied representatives wins; np.unique sorts, so on equal votes the
    # smallest class index is picked.
    predicted = int(classes[votes.argmax()])
    best_idx = int(tied[tied_classes == predicted][0])
    return predicted, tie, best_idx


def classify(sample: np.ndarray, reference: ReferenceMatrix) -> ClassificationOutcome:
    """Score `sample` against every representative and pick the argmax class.

    The sample must be normalized with the same normalizer used to build the
    reference.
    """
    if len(reference) == 0:
        raise ValueError("empty reference matrix")
    s = np.asarray(sample, dtype=np.float64)
    if s.shape != (reference.d,):
        raise ValueError(f"sample has shape {s.shape}, expected ({reference.d},)")
    counts = ((s >= reference.lower) & (s <= reference.upper)).sum(axis=1)
    predicted, tie, best_idx = resolve_prediction(counts, reference.rep_classes)
    best = reference.representatives[best_idx]
    return ClassificationOutcome(
        predicted_class=predicted,
        best_representative=(best.class_label, best.cluster_index),
        acceptance_counts=counts,
        tie=tie,
    )


def _nearest_index(sample: np.ndarray, points: np.ndarray) -> int:
    diff = points - sample
    return int(np.einsum("nd,nd->n", diff, diff).argmin())


def knn1_classify(sample: np.ndarray, train_features: np.ndarray,
                  train_labels: np.ndarray) -> int:
    """Baseline 1: label of the Euclidean-nearest training sample.

    Distance ties resolve to the smallest sample index.
    """
    x = np.asarray(train_features, dtype=np.float64)
    y = np.asarray(train_labels)
    if x.ndim != 2 or x.shape[0] < 1:
        raise ValueError("training set must be a non-empty 2-D matrix")
    if x.shape[0] != y.shape[0]:
        raise ValueError("one label per training sample required")
    return int(y[_nearest_index(np.asarray(sample, dtype=np.float64), x)])


def cluster_mean_classify(sample: np.ndarray, centroids: np.ndarray,
                          centroid_labels: np.ndarray) -> int:
    """Baseline 2: label of the nearest cluster centroid (1-NN over k*m means)."""
    c = np.asarray(centroids, dtype=np.float64)
    y = np.asarray(centroid_labels)
    if c.ndim != 2 or c.shape[0] < 1:
        raise ValueError("centroid set must be a non-empty 2-D matrix")
    if c.shape[0] != y.shape[0]:
        raise ValueError("one label per centroid required")
    return int(y[_nearest_index(np.asarray(sample, dtype=np.float64), c)])


def class_centroids(features: np.ndarray, labels: np.ndarray, k: int,
                    seed: int = 0, max_iter: int = 100, tol: float = 1e-6
                    ) -> tuple[np.ndarray, np.ndarray]:
    """Per-class K-means centroids for the cluster-mean baseline.

    Returns (centroids (k*m, d), centroid labels (k*m,)), class-major like the
    reference matrix and seeded the same way.
    """
    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels)
    m = int(y.max()) + 1
    cents, cent_labels = [], []
    for i in range(m):
        xi = x[y == i]
        if xi.shape[0] < k:
            raise InfeasibleError(f"class '{i}' has {xi.shape[0]} samples, fewer than k={k}")
        result = kmeans(xi, k, seed=seed + i, max_iter=max_iter, tol=tol)
        cents.append(result.centroids)
        cent_labels.extend([i] * k)
    return np.vstack(cents), np.asarray(cent_labels)
