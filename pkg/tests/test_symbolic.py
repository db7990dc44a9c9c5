import math

import numpy as np
import pytest

from logosym.classify import acceptance_count
from logosym.errors import DataError, InfeasibleError
from logosym.symbolic import (
    ClusterRepresentative,
    build_reference,
    cluster_stats,
    load_reference_csv,
    make_representative,
    save_reference_csv,
)


def test_cluster_stats_constant_samples():
    mean, std = cluster_stats(np.array([[5.0], [5.0], [5.0]]))
    assert mean[0] == 5.0
    assert std[0] == 0.0


def test_cluster_stats_two_values():
    mean, std = cluster_stats(np.array([[1.0], [3.0]]))
    assert mean[0] == pytest.approx(2.0)
    assert std[0] == pytest.approx(math.sqrt(2.0))  # n-1 denominator


def test_cluster_stats_single_sample_convention():
    mean, std = cluster_stats(np.array([[4.2, -1.0]]))
    assert np.allclose(mean, [4.2, -1.0])
    assert np.all(std == 0.0)


def test_cluster_stats_rejects_empty():
    with pytest.raises(ValueError):
        cluster_stats(np.empty((0, 3)))


def test_make_representative_two_point_interval():
    rep = make_representative(np.array([[1.0], [3.0]]), class_label=0, cluster_index=0)
    assert rep.lower[0] == pytest.approx(2.0 - math.sqrt(2.0), abs=1e-12)
    assert rep.upper[0] == pytest.approx(2.0 + math.sqrt(2.0), abs=1e-12)
    assert rep.support == 2


def test_make_representative_degenerate_interval():
    rep = make_representative(np.full((4, 3), 9.0), class_label=1, cluster_index=2)
    assert np.all(rep.lower == 9.0)
    assert np.all(rep.upper == 9.0)


def test_make_representative_sixty_features():
    rng = np.random.default_rng(0)
    rep = make_representative(rng.normal(size=(10, 60)), 0, 0)
    assert rep.d == 60


def test_representative_reconstructs_mean_and_std():
    rng = np.random.default_rng(1)
    for _ in range(50):
        samples = rng.normal(size=(int(rng.integers(1, 20)), int(rng.integers(1, 10))))
        mean, std = cluster_stats(samples)
        rep = make_representative(samples, 0, 0)
        assert np.allclose((rep.upper + rep.lower) / 2, mean, atol=1e-12)
        assert np.allclose((rep.upper - rep.lower) / 2, std, atol=1e-12)


def test_cluster_mean_attains_full_acceptance():
    rng = np.random.default_rng(2)
    samples = rng.normal(size=(8, 5))
    rep = make_representative(samples, 0, 0)
    assert acceptance_count(samples.mean(axis=0), rep) == 5


def test_duplicating_the_mean_never_widens_intervals():
    rng = np.random.default_rng(3)
    samples = rng.normal(size=(6, 4))
    rep = make_representative(samples, 0, 0)
    extended = np.vstack([samples, samples.mean(axis=0)])
    rep2 = make_representative(extended, 0, 0)
    assert np.all(rep2.lower >= rep.lower - 1e-12)
    assert np.all(rep2.upper <= rep.upper + 1e-12)


def test_representative_rejects_inverted_interval():
    with pytest.raises(ValueError):
        ClusterRepresentative(0, 0, np.array([1.0]), np.array([0.0]), 1)


# ------------------------------------------------------------ build_reference


def _labeled_blobs(rng, per_class=12, m=3, d=4):
    feats, labels = [], []
    for i in range(m):
        feats.append(rng.normal(loc=4.0 * i, size=(per_class, d)))
        labels.extend([i] * per_class)
    return np.vstack(feats), np.array(labels)


def test_build_reference_counts():
    rng = np.random.default_rng(4)
    feats, labels = _labeled_blobs(rng)
    ref = build_reference(feats, labels, k=2, seed=0)
    assert len(ref) == 6  # 2 clusters x 3 classes
    assert ref.m == 3 and ref.k == 2
    # class-major order with ascending cluster indices
    assert [r.class_label for r in ref.representatives] == [0, 0, 1, 1, 2, 2]
    assert [r.cluster_index for r in ref.representatives] == [0, 1, 0, 1, 0, 1]


def test_build_reference_k10_gives_30():
    rng = np.random.default_rng(5)
    feats, labels = _labeled_blobs(rng, per_class=15)
    ref = build_reference(feats, labels, k=10, seed=0)
    assert len(ref) == 30


def test_build_reference_identical_samples_single_cluster():
    feats = np.vstack([np.full((5, 3), 2.0), np.full((5, 3), 7.0)])
    labels = np.array([0] * 5 + [1] * 5)
    ref = build_reference(feats, labels, k=1, seed=0)
    first = ref.representatives[0]
    assert np.all(first.lower == first.upper)


def test_build_reference_names_small_class():
    rng = np.random.default_rng(6)
    feats, labels = _labeled_blobs(rng, per_class=6)
    keep = np.flatnonzero((labels != 1) | (np.arange(len(labels)) % 2 == 0))[:15]
    feats, labels = feats[keep], labels[keep]
    assert (labels == 1).sum() < 4 <= (labels == 0).sum()
    with pytest.raises(InfeasibleError, match="symbol"):
        build_reference(feats, labels, k=4, seed=0,
                        class_names=["both", "symbol", "text"])


def test_reference_support_accounts_for_all_samples():
    rng = np.random.default_rng(7)
    feats, labels = _labeled_blobs(rng, per_class=11)
    ref = build_reference(feats, labels, k=3, seed=1)
    for i in range(3):
        total = sum(r.support for r in ref.representatives if r.class_label == i)
        assert total == 11


# -------------------------------------------------------------- model file io


def test_reference_csv_roundtrip(tmp_path):
    rng = np.random.default_rng(8)
    feats, labels = _labeled_blobs(rng)
    ref = build_reference(feats, labels, k=2, seed=0, class_names=["a", "b", "c"])
    path = tmp_path / "model.csv"
    save_reference_csv(ref, path)
    loaded = load_reference_csv(path, class_names=["a", "b", "c"])
    assert loaded.m == ref.m and loaded.k == ref.k and loaded.d == ref.d
    for orig, back in zip(ref.representatives, loaded.representatives):
        assert orig.class_label == back.class_label
        assert orig.cluster_index == back.cluster_index
        assert orig.support == back.support
        assert np.array_equal(orig.lower, back.lower)
        assert np.array_equal(orig.upper, back.upper)


def test_reference_csv_validates_intervals(tmp_path):
    path = tmp_path / "model.csv"
    path.write_text(
        "class_label,cluster_index,support,f01_lo,f01_hi\n"
        "0,0,3,1.0,0.5\n"
        "1,0,3,0.0,1.0\n")
    with pytest.raises(DataError, match="lower > upper"):
        load_reference_csv(path)


def test_reference_csv_validates_counts(tmp_path):
    path = tmp_path / "model.csv"
    path.write_text(
        "class_label,cluster_index,support,f01_lo,f01_hi\n"
        "0,0,3,0.0,1.0\n"
        "0,1,3,0.0,1.0\n"
        "1,0,3,0.0,1.0\n")
    with pytest.raises(DataError, match="unequal"):
        load_reference_csv(path)
