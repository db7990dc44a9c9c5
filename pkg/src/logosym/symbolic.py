"""Interval-valued reference model.

Each class's training vectors are clustered; every cluster is summarized by
one representative holding, per feature, the interval [mean - std, mean + std].
The k*m representatives (k clusters for each of m classes) form the reference
matrix consulted at classification time.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .clustering import kmeans
from .errors import DataError, InfeasibleError


def cluster_stats(samples: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Column-wise mean and sample standard deviation (n-1 denominator).

    A single-sample cluster has std 0 by convention.
    """
    x = np.asarray(samples, dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    if x.shape[0] < 1:
        raise ValueError("cluster_stats needs at least one sample")
    mean = x.mean(axis=0)
    if x.shape[0] == 1:
        std = np.zeros_like(mean)
    else:
        std = x.std(axis=0, ddof=1)
    return mean, std


@dataclass(frozen=True)
class ClusterRepresentative:
    """One cluster of one class as d feature intervals [lower, upper]."""

    class_label: int
    cluster_index: int
    lower: np.ndarray
    upper: np.ndarray
    support: int  # number of samples the intervals summarize

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=np.float64)
        hi = np.asarray(self.upper, dtype=np.float64)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise ValueError("lower/upper must be 1-D arrays of equal length")
        if np.any(lo > hi):
            raise ValueError("interval with lower > upper")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def d(self) -> int:
        return self.lower.shape[0]


def make_representative(samples: np.ndarray, class_label: int,
                        cluster_index: int) -> ClusterRepresentative:
    """Summarize a cluster: interval [mean - std, mean + std] per feature."""
    mean, std = cluster_stats(samples)
    return ClusterRepresentative(
        class_label=class_label,
        cluster_index=cluster_index,
        lower=mean - std,
        upper=mean + std,
        support=int(np.asarray(samples).shape[0]),
    )


class ReferenceMatrix:
    """Ordered collection of k*m representatives (class-major, then cluster)."""

    def __init__(self, representatives: list[ClusterRepresentative], m: int, k: int,
                 class_names: list[str] | None = None):
        if len(representatives) != k * m:
            raise ValueError(f"expected {k * m} representatives, got {len(representatives)}")
        d = representatives[0].d
        per_class = np.zeros(m, dtype=int)
        for rep in representatives:
            if rep.d != d:
                raise ValueError("representatives disagree on feature count")
            if not 0 <= rep.class_label < m:
                raise ValueError(f"class label {rep.class_label} out of range")
            per_class[rep.class_label] += 1
        if np.any(per_class != k):
            raise ValueError(f"every class must contribute exactly {k} representatives")
        if class_names is not None and len(class_names) != m:
            raise ValueError("class_names length must equal m")
        self.representatives = list(representatives)
        self.d = d
        self.m = m
        self.k = k
        self.class_names = list(class_names) if class_names is not None else None
        # Dense views used by the classifier.
        self.lower = np.stack([r.lower for r in self.representatives])
        self.upper = np.stack([r.upper for r in self.representatives])
        self.rep_classes = np.array([r.class_label for r in self.representatives])

    def __len__(self) -> int:
        return len(self.representatives)

    def class_name(self, label: int) -> str:
        if self.class_names is not None:
            return self.class_names[label]
        return str(label)


def build_reference(features: np.ndarray, labels: np.ndarray, k: int, seed: int = 0,
                    class_names: list[str] | None = None, max_iter: int = 100,
                    tol: float = 1e-6) -> ReferenceMatrix:
    """Cluster each class with K-means and summarize every cluster.

    Class i is clustered with seed `seed + i` so a single seed fixes the whole
    model. Raises InfeasibleError naming the first class with fewer than k
    training samples.
    """
    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(labels)
    if x.ndim != 2 or x.shape[0] != y.shape[0]:
        raise ValueError("features must be 2-D with one label per row")
    m = int(y.max()) + 1 if class_names is None else len(class_names)
    reps: list[ClusterRepresentative] = []
    for i in range(m):
        xi = x[y == i]
        if xi.shape[0] < k:
            name = class_names[i] if class_names is not None else str(i)
            raise InfeasibleError(
                f"class '{name}' has {xi.shape[0]} training samples, fewer than k={k}")
        result = kmeans(xi, k, seed=seed + i, max_iter=max_iter, tol=tol)
        for j in range(k):
            reps.append(make_representative(xi[result.assignments == j], i, j))
    return ReferenceMatrix(reps, m=m, k=k, class_names=class_names)


def save_reference_csv(reference: ReferenceMatrix, path) -> None:
    """Model file: header then one row per representative with the class
    label, cluster index, support and the d interval bounds (lo, hi pairs)."""
    d = reference.d
    header = ["class_label", "cluster_index", "support"]
    for i in range(d):
        header += [f"f{i + 1:02d}_lo", f"f{i + 1:02d}_hi"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for rep in reference.representatives:
            row = [rep.class_label, rep.cluster_index, rep.support]
            for lo, hi in zip(rep.lower, rep.upper):
                row += [repr(float(lo)), repr(float(hi))]
            writer.writerow(row)


def load_reference_csv(path, class_names: list[str] | None = None) -> ReferenceMatrix:
    """Load and validate a model file written by save_reference_csv."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"empty model file {path}")
        if len(header) < 5 or header[:3] != ["class_label", "cluster_index", "support"]:
            raise DataError(f"{path}: unrecognized model header")
        d, rem = divmod(len(header) - 3, 2)
        if rem:
            raise DataError(f"{path}: interval columns must come in lo/hi pairs")
        reps = []
        for line_no, rec in enumerate(reader, start=2):
            if len(rec) != len(header):
                raise DataError(f"{path}:{line_no}: wrong column count")
            try:
                cls, idx, support = int(rec[0]), int(rec[1]), int(rec[2])
                vals = np.array([float(v) for v in rec[3:]])
            except ValueError as exc:
                raise DataError(f"{path}:{line_no}: malformed value") from exc
            lo, hi = vals[0::2], vals[1::2]
            if np.any(lo > hi):
                raise DataError(f"{path}:{line_no}: interval with lower > upper")
            reps.append(ClusterRepresentative(cls, idx, lo, hi, support))
    if not reps:
        raise DataError(f"{path}: no representatives")
    m = max(r.class_label for r in reps) + 1
    k, rem = divmod(len(reps), m)
    per_class = [sum(1 for r in reps if r.class_label == i) for i in range(m)]
    if rem or any(c != k for c in per_class):
        raise DataError(f"{path}: classes contribute unequal representative counts {per_class}")
    try:
        return ReferenceMatrix(reps, m=m, k=k, class_names=class_names)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from exc
