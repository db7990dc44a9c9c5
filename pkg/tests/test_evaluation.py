import numpy as np
import pytest

from logosym.evaluation import (
    ConfusionMatrix,
    accuracy_percent,
    confusion,
    f_measure,
    metrics,
    timed_classify,
)
from logosym.symbolic import build_reference

# Frozen benchmark fixture (3-class counts; rows true, columns predicted).
# Note: the stated per-class sample sizes that accompany these counts are
# (951, 419, 188), but the middle row's cells only sum to 373 -- the published
# total of 1558 therefore disagrees with the cell total of 1512.  Tests below
# assert both readings.
BENCHMARK_COUNTS = np.array([
    [818, 86, 47],
    [154, 194, 25],
    [93, 24, 71],
])
BENCHMARK_STATED_TOTAL = 951 + 419 + 188  # 1558


def test_confusion_diagonal_for_perfect_predictions():
    cm = confusion([0, 1, 2, 1], [0, 1, 2, 1], m=3)
    assert np.array_equal(cm.counts, np.diag([1, 2, 1]))


def test_confusion_reproduces_benchmark_from_prediction_multiset():
    truth, pred = [], []
    for i in range(3):
        for j in range(3):
            truth.extend([i] * BENCHMARK_COUNTS[i, j])
            pred.extend([j] * BENCHMARK_COUNTS[i, j])
    cm = confusion(truth, pred, m=3)
    assert np.array_equal(cm.counts, BENCHMARK_COUNTS)


def test_confusion_empty_input_gives_zero_matrix():
    cm = confusion([], [], m=3)
    assert np.array_equal(cm.counts, np.zeros((3, 3), dtype=int))


def test_confusion_length_mismatch():
    with pytest.raises(ValueError):
        confusion([0, 1], [0], m=2)


def test_confusion_label_range_checked():
    with pytest.raises(ValueError):
        confusion([0, 3], [0, 1], m=3)


def test_benchmark_metrics():
    cm = ConfusionMatrix(BENCHMARK_COUNTS)
    rep = metrics(cm)
    # correctly classified mass
    assert cm.correct == 1083
    # accuracy against the published (stated) total of 1558...
    assert accuracy_percent(cm.correct, BENCHMARK_STATED_TOTAL) == pytest.approx(69.51, abs=0.01)
    # ...and against the cell-consistent total of 1512
    assert cm.total == 1512
    assert rep.accuracy == pytest.approx(71.63, abs=0.01)
    # class 0 recall = 818/951, precision = 818/1065
    assert rep.per_class_recall[0] == pytest.approx(86.02, abs=0.01)
    assert rep.per_class_precision[0] == pytest.approx(76.81, abs=0.01)


def test_f_measure_identity_and_benchmark_values():
    for x in (0.0, 12.5, 61.63, 100.0):
        assert f_measure(x, x) == pytest.approx(x)
    # harmonic mean of the benchmark's average precision/recall pair; this is
    # F(avg P, avg R), which differs from averaging per-trial F values (the
    # benchmark's own per-trial aggregation reports 61.63 for the same pair).
    assert f_measure(66.89, 57.27) == pytest.approx(61.71, abs=0.01)
    # scale neutrality: fractions then x100 equals percent in, percent out
    assert f_measure(0.6689, 0.5727) * 100 == pytest.approx(f_measure(66.89, 57.27))


def test_metrics_bounds_and_macro_averages():
    rng = np.random.default_rng(0)
    for _ in range(25):
        m = int(rng.integers(2, 5))
        counts = rng.integers(0, 40, size=(m, m))
        if counts.sum() == 0:
            counts[0, 0] = 1
        rep = metrics(ConfusionMatrix(counts))
        values = [rep.accuracy, rep.precision, rep.recall, rep.f_measure,
                  *rep.per_class_precision, *rep.per_class_recall]
        assert all(0.0 <= v <= 100.0 for v in values)
        assert rep.precision == pytest.approx(np.mean(rep.per_class_precision))
        assert rep.recall == pytest.approx(np.mean(rep.per_class_recall))
        if rep.precision + rep.recall > 0:
            assert min(rep.precision, rep.recall) <= rep.f_measure + 1e-12
            assert rep.f_measure <= max(rep.precision, rep.recall) + 1e-12


def test_accuracy_recomputed_two_ways():
    rng = np.random.default_rng(1)
    truth = rng.integers(0, 3, size=200)
    pred = rng.integers(0, 3, size=200)
    cm = confusion(truth, pred, m=3)
    rep = metrics(cm)
    by_equality = 100.0 * float(np.mean(truth == pred))
    assert rep.accuracy == pytest.approx(by_equality, abs=1e-12)
    assert cm.correct <= cm.total


def test_zero_denominator_classes_flagged():
    # class 2 never predicted; class 1 never present
    counts = np.array([
        [5, 1, 0],
        [0, 0, 0],
        [2, 1, 0],
    ])
    rep = metrics(ConfusionMatrix(counts))
    assert rep.undefined_precision == (2,)
    assert rep.undefined_recall == (1,)
    assert rep.per_class_precision[2] == 0.0
    assert rep.per_class_recall[1] == 0.0


def test_metrics_rejects_empty_matrix():
    with pytest.raises(ValueError):
        metrics(ConfusionMatrix(np.zeros((2, 2), dtype=int)))


# --------------------------------------------------------------------- timing


def _tiny_reference():
    rng = np.random.default_rng(2)
    feats = np.vstack([rng.normal(loc=3 * i, size=(8, 4)) for i in range(3)])
    labels = np.repeat(np.arange(3), 8)
    return build_reference(feats, labels, k=2, seed=0), feats, labels


def test_timed_classify_positive_average():
    ref, feats, labels = _tiny_reference()
    rng = np.random.default_rng(3)
    samples = rng.normal(size=(20, 4))
    timed = timed_classify(samples, ref, "proposed")
    assert timed.avg_seconds_per_sample > 0
    assert timed.predictions.shape == (20,)
    assert timed.comparisons_per_sample == 6  # k*m reference rows


def test_timed_classify_comparison_counts():
    ref, feats, labels = _tiny_reference()
    samples = np.random.default_rng(4).normal(size=(5, 4))
    assert timed_classify(samples, ref, "proposed").comparisons_per_sample == len(ref)
    assert timed_classify(samples, (feats, labels), "model1").comparisons_per_sample == 24
    cents = np.vstack([feats[:2], feats[8:10], feats[16:18]])
    cent_labels = np.repeat(np.arange(3), 2)
    assert timed_classify(samples, (cents, cent_labels), "model2").comparisons_per_sample == 6


def test_timed_classify_amortization_sanity():
    ref, _, _ = _tiny_reference()
    rng = np.random.default_rng(5)
    small = rng.normal(size=(50, 4))
    large = rng.normal(size=(100, 4))
    t_small = timed_classify(small, ref, "proposed").avg_seconds_per_sample
    t_large = timed_classify(large, ref, "proposed").avg_seconds_per_sample
    # loose bound: doubling the batch keeps the per-sample cost within 2x
    assert t_large < 2.0 * t_small + 1e-4


def test_timed_classify_rejects_empty_and_unknown():
    ref, feats, labels = _tiny_reference()
    with pytest.raises(ValueError):
        timed_classify(np.empty((0, 4)), ref, "proposed")
    with pytest.raises(ValueError):
        timed_classify(np.zeros((1, 4)), ref, "modelX")
