"""Experiment sweep and model comparison.

The sweep crosses training fractions with cluster counts, repeats every cell
for a number of seeded trials, and aggregates min/max/avg of accuracy,
precision, recall and F-measure over the trials. Per fraction, the winning
cluster count is the one with the highest average F-measure; the overall best
row is chosen the same way across fractions.

All random choices (splits, K-means starts) derive from the master seed:
trial t uses seed + t, so any individual trial can be reproduced. Wall-clock
timings are collected alongside but serialized separately so the metric
reports stay byte-deterministic.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from . import imaging
from .classify import class_centroids
from .corpus import LabeledCorpus, split_indices
from .errors import DataError, InfeasibleError
from .evaluation import ConfusionMatrix, confusion, metrics, timed_classify
from .imaging import FeatureParams, apply_normalizer, fit_normalizer
from .symbolic import build_reference

ALL_CLASSIFIERS = ("proposed", "model1", "model2")


@dataclass(frozen=True)
class ExperimentConfig:
    train_fractions: tuple[float, ...] = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)
    k_values: tuple[int, ...] = (2, 3, 4, 5, 6, 7, 8, 9, 10)
    trials: int = 20
    seed: int = 0
    classifiers: tuple[str, ...] = ALL_CLASSIFIERS
    corpus_dir: str | None = None
    synthetic_per_class: int | None = None
    synthetic_size: int = 200
    image_size: int = 200
    grid_rows: int = 2
    grid_cols: int = 4
    filter_sigma: float = 1.0
    filter_size: int = 7
    zernike_moments: tuple[tuple[int, int], ...] = ((2, 0), (2, 2))
    kmeans_max_iter: int = 100
    kmeans_tol: float = 1e-6

    def __post_init__(self):
        if not self.train_fractions:
            raise ValueError("train_fractions must not be empty")
        for f in self.train_fractions:
            if not 0.0 < f < 1.0:
                raise ValueError(f"train fraction {f} outside (0, 1)")
        if not self.k_values or any(k < 1 for k in self.k_values):
            raise ValueError("k_values must be >= 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        unknown = set(self.classifiers) - set(ALL_CLASSIFIERS)
        if unknown:
            raise ValueError(f"unknown classifiers {sorted(unknown)}")

    def feature_params(self) -> FeatureParams:
        return FeatureParams(
            grid_rows=self.grid_rows,
            grid_cols=self.grid_cols,
            filter_sigma=self.filter_sigma,
            filter_size=self.filter_size,
            zernike_moments=self.zernike_moments,
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["zernike_moments"] = [list(nm) for nm in self.zernike_moments]
        return d


_CONFIG_PARSERS = {
    "train_fractions": lambda v: tuple(float(x) for x in v.split(",") if x.strip()),
    "k_values": lambda v: tuple(int(x) for x in v.split(",") if x.strip()),
    "trials": int,
    "seed": int,
    "classifiers": lambda v: tuple(x.strip() for x in v.split(",") if x.strip()),
    "corpus_dir": str,
    "synthetic_per_class": int,
    "synthetic_size": int,
    "image_size": int,
    "grid_rows": int,
    "grid_cols": int,
    "filter_sigma": float,
    "filter_size": int,
    "zernike_moments": lambda v: tuple(
        tuple(int(p) for p in pair.split(":")) for pair in v.split(",") if pair.strip()
    ),
    "kmeans_max_iter": int,
    "kmeans_tol": float,
}


def load_config(path) -> ExperimentConfig:
    """Parse a plain key = value configuration file ('#' starts a comment)."""
    overrides = {}
    with open(path) as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DataError(f"{path}:{line_no}: expected key = value")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in _CONFIG_PARSERS:
                raise DataError(f"{path}:{line_no}: unknown configuration key {key!r}")
            try:
                overrides[key] = _CONFIG_PARSERS[key](value)
            except ValueError as exc:
                raise DataError(f"{path}:{line_no}: bad value for {key}: {exc}") from exc
    try:
        return ExperimentConfig(**overrides)
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from exc


def corpus_content_hash(corpus: LabeledCorpus, params: FeatureParams) -> str:
    """Content hash over image bytes, labels and extractor parameters."""
    h = hashlib.sha256()
    h.update(repr(params).encode())
    for entry in corpus.entries:
        h.update(entry.ident.encode())
        h.update(bytes([entry.label]))
        h.update(np.ascontiguousarray(entry.load().pixels).tobytes())
    return h.hexdigest()


def corpus_features(corpus: LabeledCorpus, params: FeatureParams,
                    cache_dir=None, image_size: int = 200
                    ) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Extract (or reload cached) raw features for every corpus entry.

    Returns (features, integer labels, identifiers). The cache key is the
    corpus content hash, so any change to an image or parameter misses.
    """
    cache_path = None
    if cache_dir is not None:
        digest = corpus_content_hash(corpus, params)
        cache_path = Path(cache_dir) / f"features_{digest[:16]}.csv"
        if cache_path.exists():
            feats, label_names, idents = imaging.load_feature_csv(cache_path)
            if feats.shape[0] == len(corpus):
                name_to_idx = {n: i for i, n in enumerate(corpus.class_names)}
                labels = np.array([name_to_idx[n] for n in label_names])
                return feats, labels, idents

    target = (image_size, image_size)
    feats = np.empty((len(corpus), params.feature_count()))
    labels = np.empty(len(corpus), dtype=int)
    idents = []
    for i, entry in enumerate(corpus.entries):
        feats[i] = imaging.features_for_image(entry.load(), params, target)
        labels[i] = entry.label
        idents.append(entry.ident)

    if cache_path is not None:
        cache_path.parent.mkdir(parents=True, exist_ok=True)
        imaging.save_feature_csv(
            cache_path, feats, [corpus.class_names[l] for l in labels], idents)
    return feats, labels, idents


@dataclass(frozen=True)
class MetricStats:
    minimum: float
    maximum: float
    average: float

    @classmethod
    def of(cls, values) -> "MetricStats":
        v = np.asarray(values, dtype=np.float64)
        return cls(float(v.min()), float(v.max()), float(v.mean()))


@dataclass(frozen=True)
class CellResult:
    fraction: float
    k: int
    trials: int
    accuracy: MetricStats | None = None
    precision: MetricStats | None = None
    recall: MetricStats | None = None
    f_measure: MetricStats | None = None
    skipped: bool = False
    skip_reason: str | None = None


@dataclass(frozen=True)
class ExperimentReport:
    config: dict
    class_names: tuple[str, ...]
    cells: tuple[CellResult, ...]
    best_per_fraction: dict[float, CellResult]
    best: CellResult | None
    timing: dict[str, float] = field(default_factory=dict)  # cell key -> avg sec/sample


def _cell_key(fraction: float, k: int) -> str:
    return f"fraction={fraction:g},k={k}"


def _fraction_feasible_k(labels: np.ndarray, fraction: float) -> int:
    """Largest k every class can support after a stratified split."""
    counts = np.bincount(labels)
    counts = counts[counts > 0]
    return int(min(max(1, int(np.floor(fraction * c))) for c in counts))


def _check_disjoint(train_idx: np.ndarray, test_idx: np.ndarray) -> None:
    # Leakage guard: fitting code must never see a test index.
    if np.intersect1d(train_idx, test_idx).size:
        raise RuntimeError("train/test index sets overlap; refusing to fit")


def run_experiment(config: ExperimentConfig, corpus: LabeledCorpus,
                   cache_dir=None) -> ExperimentReport:
    """Full sweep of the interval classifier over fractions x k x trials."""
    params = config.feature_params()
    features, labels, _idents = corpus_features(
        corpus, params, cache_dir=cache_dir, image_size=config.image_size)
    m = corpus.m

    cells: list[CellResult] = []
    timing: dict[str, float] = {}
    for fraction in config.train_fractions:
        max_k = _fraction_feasible_k(labels, fraction)
        for k in config.k_values:
            if k > max_k:
                cells.append(CellResult(
                    fraction=fraction, k=k, trials=0, skipped=True,
                    skip_reason=f"a class has only {max_k} training samples at this fraction"))
                continue
            accs, precs, recs, fms, times = [], [], [], [], []
            for t in range(config.trials):
                trial_seed = config.seed + t
                train_idx, test_idx = split_indices(labels, fraction, trial_seed)
                _check_disjoint(train_idx, test_idx)
                norm = fit_normalizer(features[train_idx])
                train_x = apply_normalizer(norm, features[train_idx])
                test_x = apply_normalizer(norm, features[test_idx])
                reference = build_reference(
                    train_x, labels[train_idx], k, seed=trial_seed,
                    class_names=list(corpus.class_names),
                    max_iter=config.kmeans_max_iter, tol=config.kmeans_tol)
                timed = timed_classify(test_x, reference, "proposed")
                report = metrics(confusion(labels[test_idx], timed.predictions, m))
                accs.append(report.accuracy)
                precs.append(report.precision)
                recs.append(report.recall)
                fms.append(report.f_measure)
                times.append(timed.avg_seconds_per_sample)
            cells.append(CellResult(
                fraction=fraction, k=k, trials=config.trials,
                accuracy=MetricStats.of(accs), precision=MetricStats.of(precs),
                recall=MetricStats.of(recs), f_measure=MetricStats.of(fms)))
            timing[_cell_key(fraction, k)] = float(np.mean(times))

    best_per_fraction = {}
    for fraction in config.train_fractions:
        candidates = [c for c in cells if c.fraction == fraction and not c.skipped]
        if candidates:
            best_per_fraction[fraction] = max(
                candidates, key=lambda c: (c.f_measure.average, -c.k))
    best = None
    if best_per_fraction:
        best = max(best_per_fraction.values(),
                   key=lambda c: (c.f_measure.average, -c.fraction))

    return ExperimentReport(
        config=config.to_dict(), class_names=corpus.class_names,
        cells=tuple(cells), best_per_fraction=best_per_fraction,
        best=best, timing=timing)


@dataclass(frozen=True)
class ModelComparison:
    name: str
    best_fraction: float
    best_k: int | None
    accuracy: MetricStats
    precision: MetricStats
    recall: MetricStats
    f_measure: MetricStats
    pooled_confusion: ConfusionMatrix
    misclassified: tuple[tuple[str, str, str], ...]  # (ident, true, predicted)
    avg_seconds_per_sample: float
    comparisons_per_sample: int


@dataclass(frozen=True)
class ComparisonReport:
    config: dict
    class_names: tuple[str, ...]
    models: dict[str, ModelComparison]
    split_checksums: dict[str, str]  # "fraction,trial" -> digest over indices


def _split_checksum(train_idx: np.ndarray, test_idx: np.ndarray) -> str:
    h = hashlib.sha256()
    h.update(np.asarray(train_idx, dtype=np.int64).tobytes())
    h.update(b"|")
    h.update(np.asarray(test_idx, dtype=np.int64).tobytes())
    return h.hexdigest()[:16]


def compare_models(config: ExperimentConfig, corpus: LabeledCorpus,
                   cache_dir=None) -> ComparisonReport:
    """Evaluate the requested classifiers on identical splits and seeds.

    Every model sees the same per-(fraction, trial) split and the same
    normalized features; the best configuration per model is again selected
    by average F-measure. Timing and comparison counts come from the winning
    configuration's first trial.
    """
    params = config.feature_params()
    features, labels, idents = corpus_features(
        corpus, params, cache_dir=cache_dir, image_size=config.image_size)
    m = corpus.m
    names = corpus.class_names

    # Shared splits and normalized feature views per (fraction, trial).
    splits: dict[tuple[float, int], tuple] = {}
    checksums: dict[str, str] = {}
    for fraction in config.train_fractions:
        for t in range(config.trials):
            train_idx, test_idx = split_indices(labels, fraction, config.seed + t)
            _check_disjoint(train_idx, test_idx)
            norm = fit_normalizer(features[train_idx])
            splits[(fraction, t)] = (
                train_idx, test_idx,
                apply_normalizer(norm, features[train_idx]),
                apply_normalizer(norm, features[test_idx]),
            )
            checksums[f"{fraction:g},{t}"] = _split_checksum(train_idx, test_idx)

    def evaluate(kind: str, fraction: float, k: int | None, t: int):
        train_idx, test_idx, train_x, test_x = splits[(fraction, t)]
        trial_seed = config.seed + t
        if kind == "proposed":
            model = build_reference(train_x, labels[train_idx], k, seed=trial_seed,
                                    class_names=list(names),
                                    max_iter=config.kmeans_max_iter, tol=config.kmeans_tol)
        elif kind == "model1":
            model = (train_x, labels[train_idx])
        else:
            model = class_centroids(train_x, labels[train_idx], k, seed=trial_seed,
                                    max_iter=config.kmeans_max_iter, tol=config.kmeans_tol)
        timed = timed_classify(test_x, model, kind)
        cm = confusion(labels[test_idx], timed.predictions, m, list(names))
        return cm, metrics(cm), timed, test_idx

    models: dict[str, ModelComparison] = {}
    for kind in config.classifiers:
        k_axis = [None] if kind == "model1" else list(config.k_values)
        grid = {}
        for fraction in config.train_fractions:
            max_k = _fraction_feasible_k(labels, fraction)
            for k in k_axis:
                if k is not None and k > max_k:
                    continue
                rows = [evaluate(kind, fraction, k, t) for t in range(config.trials)]
                grid[(fraction, k)] = rows
        if not grid:
            raise InfeasibleError(f"no feasible (fraction, k) cell for {kind}")

        def avg_f(item):
            rows = item[1]
            return float(np.mean([r[1].f_measure for r in rows]))

        (best_fraction, best_k), best_rows = max(grid.items(), key=avg_f)
        pooled = ConfusionMatrix(
            np.sum([r[0].counts for r in best_rows], axis=0), list(names))
        cm0, _rep0, timed0, test_idx0 = best_rows[0]
        missed = tuple(
            (idents[i], names[labels[i]], names[p])
            for i, p in zip(test_idx0, timed0.predictions) if labels[i] != p)
        models[kind] = ModelComparison(
            name=kind, best_fraction=best_fraction, best_k=best_k,
            accuracy=MetricStats.of([r[1].accuracy for r in best_rows]),
            precision=MetricStats.of([r[1].precision for r in best_rows]),
            recall=MetricStats.of([r[1].recall for r in best_rows]),
            f_measure=MetricStats.of([r[1].f_measure for r in best_rows]),
            pooled_confusion=pooled,
            misclassified=missed,
            avg_seconds_per_sample=timed0.avg_seconds_per_sample,
            comparisons_per_sample=timed0.comparisons_per_sample,
        )

    return ComparisonReport(config=config.to_dict(), class_names=names,
                            models=models, split_checksums=checksums)
