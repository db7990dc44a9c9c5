import numpy as np
import pytest

from logosym.classify import (
    acceptance_count,
    classify,
    cluster_mean_classify,
    knn1_classify,
    resolve_prediction,
    similarity,
)
from logosym.symbolic import ClusterRepresentative, ReferenceMatrix


def rep(lo, hi, cls=0, idx=0):
    return ClusterRepresentative(cls, idx, np.asarray(lo, float), np.asarray(hi, float), 1)


def reference_from(bounds):
    """bounds: list of (class, cluster, lower, upper) in matrix order."""
    reps = [rep(lo, hi, cls, idx) for cls, idx, lo, hi in bounds]
    m = max(b[0] for b in bounds) + 1
    k = len(bounds) // m
    return ReferenceMatrix(reps, m=m, k=k)


# ----------------------------------------------------------------- similarity


def test_similarity_boundaries_inclusive():
    assert similarity(1.0, 1.0, 2.0) == 1
    assert similarity(2.0, 1.0, 2.0) == 1
    assert similarity(2.0 + 1e-12, 1.0, 2.0) == 0
    assert similarity(5.0, 5.0, 5.0) == 1  # degenerate interval


# ----------------------------------------------------------- acceptance_count


def test_acceptance_count_extremes():
    r = rep([0.0, 0.0, 0.0], [1.0, 1.0, 1.0])
    assert acceptance_count(np.array([0.5, 0.1, 0.9]), r) == 3
    assert acceptance_count(np.array([2.0, -1.0, 5.0]), r) == 0


def test_acceptance_count_hand_fixture():
    r = rep([0.0, 3.0], [1.0, 4.0])
    assert acceptance_count(np.array([0.5, 2.0]), r) == 1


def test_acceptance_count_dimension_mismatch():
    r = rep([0.0, 0.0], [1.0, 1.0])
    with pytest.raises(ValueError):
        acceptance_count(np.array([0.5]), r)


# ------------------------------------------------------------------- classify


def test_classify_unique_maximum():
    ref = reference_from([
        (0, 0, [0.0, 0.0], [0.2, 0.2]),
        (1, 0, [0.0, 0.0], [0.2, 0.2]),
        (2, 0, [0.0, 0.0], [1.0, 1.0]),
    ])
    out = classify(np.array([0.5, 0.5]), ref)
    assert out.predicted_class == 2
    assert out.tie is False
    assert out.best_representative == (2, 0)
    assert list(out.acceptance_counts) == [0, 0, 2]


def test_classify_same_class_tie_is_not_flagged():
    ref = reference_from([
        (0, 0, [0.0, 0.0], [1.0, 1.0]),
        (0, 1, [0.0, 0.0], [1.0, 1.0]),
        (1, 0, [5.0, 5.0], [6.0, 6.0]),
        (1, 1, [5.0, 5.0], [6.0, 6.0]),
    ])
    out = classify(np.array([0.5, 0.5]), ref)
    assert out.predicted_class == 0
    assert out.tie is False


def test_classify_cross_class_tie_majority_wins():
    # two class-0 representatives and one class-1 representative share the max
    ref = reference_from([
        (0, 0, [0.0, 0.0], [1.0, 0.4]),
        (0, 1, [0.2, 0.1], [0.9, 0.5]),
        (1, 0, [0.0, 0.0], [1.0, 0.4]),
        (1, 1, [9.0, 9.0], [9.5, 9.5]),
    ])
    out = classify(np.array([0.5, 0.2]), ref)
    assert list(out.acceptance_counts) == [2, 2, 2, 0]
    assert out.predicted_class == 0
    assert out.tie is True
    assert out.best_representative == (0, 0)


def test_classify_balanced_tie_takes_smallest_class():
    ref = reference_from([
        (0, 0, [0.0], [1.0]),
        (1, 0, [0.0], [1.0]),
    ])
    out = classify(np.array([0.5]), ref)
    assert out.predicted_class == 0
    assert out.tie is True


def test_classify_all_zero_counts_still_resolves():
    ref = reference_from([
        (0, 0, [5.0], [6.0]),
        (1, 0, [7.0], [8.0]),
    ])
    out = classify(np.array([0.0]), ref)
    assert list(out.acceptance_counts) == [0, 0]
    assert out.predicted_class == 0
    assert out.tie is True


def test_classify_dimension_checked():
    ref = reference_from([(0, 0, [0.0], [1.0]), (1, 0, [0.0], [1.0])])
    with pytest.raises(ValueError):
        classify(np.array([0.5, 0.5]), ref)


def test_counts_match_bruteforce_loop():
    rng = np.random.default_rng(0)
    for _ in range(100):
        d = int(rng.integers(1, 7))
        m = int(rng.integers(2, 4))
        k = int(rng.integers(1, 4))
        if k * m > 9:
            continue
        bounds = []
        for cls in range(m):
            for idx in range(k):
                lo = rng.uniform(-1, 1, size=d)
                hi = lo + rng.uniform(0, 1, size=d)
                bounds.append((cls, idx, lo, hi))
        ref = reference_from(bounds)
        sample = rng.uniform(-1.5, 1.5, size=d)
        out = classify(sample, ref)
        for count, r in zip(out.acceptance_counts, ref.representatives):
            naive = sum(1 for l in range(d) if r.lower[l] <= sample[l] <= r.upper[l])
            assert count == naive


def test_argmax_invariant_under_count_shift():
    rng = np.random.default_rng(1)
    for _ in range(50):
        counts = rng.integers(0, 10, size=9)
        classes = rng.integers(0, 3, size=9)
        base = resolve_prediction(counts, classes)
        shifted = resolve_prediction(counts + 7, classes)
        assert base == shifted


def test_widening_intervals_never_lowers_count():
    rng = np.random.default_rng(2)
    for _ in range(50):
        d = int(rng.integers(1, 8))
        lo = rng.uniform(-1, 1, size=d)
        hi = lo + rng.uniform(0, 1, size=d)
        sample = rng.uniform(-2, 2, size=d)
        base = acceptance_count(sample, rep(lo, hi))
        pad = rng.uniform(0, 1, size=d)
        widened = acceptance_count(sample, rep(lo - pad, hi + pad))
        assert widened >= base


# -------------------------------------------------------------------- 1-NN


def test_knn1_exact_match_returns_its_label():
    x = np.array([[0.0, 0.0], [3.0, 3.0], [9.0, 9.0]])
    y = np.array([2, 0, 1])
    assert knn1_classify(x[1], x, y) == 0


def test_knn1_hand_fixture():
    x = np.array([[0.0], [10.0]])
    y = np.array([0, 1])
    assert knn1_classify(np.array([4.0]), x, y) == 0


def test_knn1_distance_tie_prefers_smallest_index():
    x = np.array([[0.0], [10.0]])
    y = np.array([0, 1])
    assert knn1_classify(np.array([5.0]), x, y) == 0


def test_knn1_training_samples_self_classify():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(20, 4))
    y = rng.integers(0, 3, size=20)
    for i in range(20):
        assert knn1_classify(x[i], x, y) == y[i]


def test_knn1_rejects_empty():
    with pytest.raises(ValueError):
        knn1_classify(np.array([1.0]), np.empty((0, 1)), np.array([]))


# ----------------------------------------------------------- cluster-mean 1NN


def test_cluster_mean_exact_centroid():
    cents = np.array([[0.0], [1.0], [10.0]])
    labels = np.array([0, 0, 1])
    assert cluster_mean_classify(np.array([10.0]), cents, labels) == 1


def test_cluster_mean_nearest_wins():
    cents = np.array([[0.0], [1.0], [10.0]])
    labels = np.array([0, 0, 1])
    assert cluster_mean_classify(np.array([2.0]), cents, labels) == 0


def test_cluster_mean_single_centroid():
    cents = np.array([[3.0, 3.0]])
    labels = np.array([1])
    for q in ([0.0, 0.0], [100.0, -5.0]):
        assert cluster_mean_classify(np.array(q), cents, labels) == 1


def test_cluster_mean_rejects_empty():
    with pytest.raises(ValueError):
        cluster_mean_classify(np.array([1.0]), np.empty((0, 1)), np.array([]))


def test_classification_is_repeatable():
    rng = np.random.default_rng(4)
    bounds = []
    for cls in range(3):
        for idx in range(2):
            lo = rng.uniform(-1, 1, size=5)
            bounds.append((cls, idx, lo, lo + 0.5))
    ref = reference_from(bounds)
    sample = rng.uniform(-1, 1, size=5)
    first = classify(sample, ref)
    for _ in range(5):
        again = classify(sample, ref)
        assert again.predicted_class == first.predicted_class
        assert again.tie == first.tie
        assert np.array_equal(again.acceptance_counts, first.acceptance_counts)
