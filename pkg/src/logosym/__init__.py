"""logosym: interval-based classification of color logo images.

The pipeline: preprocess an RGB logo, fuse 60 global color/texture/shape
features, cluster each class's training vectors with seeded K-means, keep one
[mean - std, mean + std] interval vector per cluster, and classify crisp test
vectors by counting how many features fall inside each representative's
intervals.
"""

from .classify import (ClassificationOutcome, acceptance_count, classify,
                       cluster_mean_classify, knn1_classify, similarity)
from .clustering import ClusteringResult, kmeans
from .corpus import LabeledCorpus, load_corpus, split, split_indices
from .errors import (DataError, InfeasibleError, InvalidImageError, LogosymError)
from .evaluation import (ConfusionMatrix, MetricsReport, confusion, f_measure,
                         metrics, timed_classify)
from .experiment import (ExperimentConfig, compare_models, load_config,
                         run_experiment)
from .imaging import (FEATURE_COUNT, FeatureParams, ImageBuffer, Normalizer,
                      apply_normalizer, color_features, extract,
                      features_for_image, fit_normalizer, preprocess,
                      shape_features, texture_features)
from .symbolic import (ClusterRepresentative, ReferenceMatrix, build_reference,
                       cluster_stats, make_representative)
from .synth import generate_synthetic

__version__ = "0.1.0"

__all__ = [
    "ClassificationOutcome", "ClusterRepresentative", "ClusteringResult",
    "ConfusionMatrix", "DataError", "ExperimentConfig", "FEATURE_COUNT",
    "FeatureParams", "ImageBuffer", "InfeasibleError", "InvalidImageError",
    "LabeledCorpus", "LogosymError", "MetricsReport", "Normalizer",
    "ReferenceMatrix", "acceptance_count", "apply_normalizer",
    "build_reference", "classify", "cluster_mean_classify", "cluster_stats",
    "color_features", "compare_models", "confusion", "extract", "f_measure",
    "features_for_image", "fit_normalizer", "generate_synthetic", "kmeans",
    "knn1_classify", "load_config", "load_corpus", "make_representative",
    "metrics", "preprocess", "run_experiment", "shape_features", "similarity",
    "split", "split_indices", "texture_features", "timed_classify",
]
