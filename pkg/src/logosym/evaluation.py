"""Confusion matrices, classification metrics and wall-clock timing.

Percentages follow the usual conventions: accuracy is the diagonal mass over
the total, per-class precision divides by the column sum (samples predicted
as the class), per-class recall by the row sum (samples truly of the class),
and the system-level precision/recall are unweighted class means. The
F-measure is the harmonic mean of the two system values; it is scale-neutral,
so computing it on fractions and scaling once to percent equals computing it
on percentages directly (no second x100).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .classify import classify, cluster_mean_classify, knn1_classify
from .symbolic import ReferenceMatrix


@dataclass(frozen=True)
class ConfusionMatrix:
    """m x m counts; rows are true classes, columns are predicted classes."""

    counts: np.ndarray
    class_names: list[str] | None = None

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError("confusion matrix must be square")
        if np.any(c < 0):
            raise ValueError("confusion matrix counts must be non-negative")
        object.__setattr__(self, "counts", c)

    @property
    def m(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def correct(self) -> int:
        return int(np.trace(self.counts))


def confusion(truth, predicted, m: int, class_names: list[str] | None = None) -> ConfusionMatrix:
    """Tally counts[i][j] = |{samples with true class i predicted as j}|."""
    t = np.asarray(truth, dtype=np.int64)
    p = np.asarray(predicted, dtype=np.int64)
    if t.shape != p.shape:
        raise ValueError(f"length mismatch: {t.shape[0]} truths vs {p.shape[0]} predictions")
    if t.size and (t.min() < 0 or t.max() >= m or p.min() < 0 or p.max() >= m):
        raise ValueError(f"labels must lie in [0, {m})")
    counts = np.zeros((m, m), dtype=np.int64)
    np.add.at(counts, (t, p), 1)
    return ConfusionMatrix(counts, class_names)


def accuracy_percent(correct: int, total: int) -> float:
    """Share of correctly classified samples, in percent."""
    if total <= 0:
        raise ValueError("total must be positive")
    return 100.0 * correct / total


def f_measure(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall (same unit as its inputs)."""
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class MetricsReport:
    accuracy: float
    per_class_precision: tuple[float, ...]
    per_class_recall: tuple[float, ...]
    precision: float           # unweighted mean of per-class precision
    recall: float              # unweighted mean of per-class recall
    f_measure: float
    avg_time_per_sample: float | None = None
    undefined_precision: tuple[int, ...] = ()  # classes never predicted
    undefined_recall: tuple[int, ...] = ()     # classes never present


def metrics(cm: ConfusionMatrix, avg_time_per_sample: float | None = None) -> MetricsReport:
    """All percentage metrics from one confusion matrix.

    Zero-denominator class ratios are reported as 0 and flagged.
    """
    counts = cm.counts.astype(np.float64)
    total = counts.sum()
    if total <= 0:
        raise ValueError("cannot compute metrics on an empty confusion matrix")
    diag = np.diag(counts)
    col_sums = counts.sum(axis=0)
    row_sums = counts.sum(axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        prec = np.where(col_sums > 0, 100.0 * diag / col_sums, 0.0)
        rec = np.where(row_sums > 0, 100.0 * diag / row_sums, 0.0)
    precision = float(prec.mean())
    recall = float(rec.mean())
    return MetricsReport(
        accuracy=accuracy_percent(cm.correct, cm.total),
        per_class_precision=tuple(float(v) for v in prec),
        per_class_recall=tuple(float(v) for v in rec),
        precision=precision,
        recall=recall,
        f_measure=f_measure(precision, recall),
        avg_time_per_sample=avg_time_per_sample,
        undefined_precision=tuple(int(i) for i in np.flatnonzero(col_sums == 0)),
        undefined_recall=tuple(int(i) for i in np.flatnonzero(row_sums == 0)),
    )


@dataclass(frozen=True)
class TimedClassification:
    predictions: np.ndarray
    avg_seconds_per_sample: float
    comparisons_per_sample: int  # reference rows consulted per test sample


def timed_classify(samples: np.ndarray, model, classifier_kind: str) -> TimedClassification:
    """Classify a batch sample-by-sample under a wall clock.

    classifier_kind selects the model payload:
      * "proposed": model is a ReferenceMatrix
      * "model1":   model is (train_features, train_labels)
      * "model2":   model is (centroids, centroid_labels)

    The measured span covers only the classification loop (no feature
    extraction); the average is wall-clock seconds per sample.
    """
    x = np.asarray(samples, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] < 1:
        raise ValueError("need at least one sample to time")

    if classifier_kind == "proposed":
        if not isinstance(model, ReferenceMatrix):
            raise ValueError("proposed classifier expects a ReferenceMatrix")
        predict = lambda s: classify(s, model).predicted_class
        comparisons = len(model)
    elif classifier_kind == "model1":
        train_x, train_y = model
        predict = lambda s: knn1_classify(s, train_x, train_y)
        comparisons = np.asarray(train_x).shape[0]
    elif classifier_kind == "model2":
        cents, cent_labels = model
        predict = lambda s: cluster_mean_classify(s, cents, cent_labels)
        comparisons = np.asarray(cents).shape[0]
    else:
        raise ValueError(f"unknown classifier kind {classifier_kind!r}")

    start = time.perf_counter()
    predictions = np.array([predict(s) for s in x])
    span = time.perf_counter() - start
    return TimedClassification(
        predictions=predictions,
        avg_seconds_per_sample=span / x.shape[0],
        comparisons_per_sample=int(comparisons),
    )
