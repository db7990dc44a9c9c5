"""Build an interval reference matrix and classify a held-out logo with it.

Run:  python demos/02_interval_model.py
"""

from logosym import (apply_normalizer, build_reference, classify,
                     fit_normalizer, split)
from logosym.experiment import corpus_features
from logosym.imaging import DEFAULT_PARAMS
from logosym.synth import generate_synthetic

corpus = generate_synthetic(n_per_class=15, seed=7)
train, test = split(corpus, fraction=0.7, seed=0)
print(f"corpus: {len(corpus)} logos, train {len(train)} / test {len(test)}")

# Raw features, then min-max ranges learned on the training half only.
train_x, train_y, _ = corpus_features(train, DEFAULT_PARAMS)
test_x, test_y, test_ids = corpus_features(test, DEFAULT_PARAMS)
norm = fit_normalizer(train_x)
train_x = apply_normalizer(norm, train_x)
test_x = apply_normalizer(norm, test_x)

# Two clusters per class -> 6 representatives, each a row of 60 intervals.
reference = build_reference(train_x, train_y, k=2, seed=0,
                            class_names=list(corpus.class_names))
print(f"\nreference matrix: {len(reference)} representatives x {reference.d} intervals")
for rep in reference.representatives:
    widths = rep.upper - rep.lower
    print(f"  class {corpus.class_names[rep.class_label]:>6} cluster {rep.cluster_index}: "
          f"{rep.support:2d} samples, mean interval width {widths.mean():.3f}")

# Classify one test sample and look at the acceptance counts directly.
sample, truth = test_x[0], test_y[0]
outcome = classify(sample, reference)
print(f"\nquery {test_ids[0]} (true class {corpus.class_names[truth]}):")
for rep, count in zip(reference.representatives, outcome.acceptance_counts):
    marker = " <-- argmax" if (rep.class_label, rep.cluster_index) == outcome.best_representative else ""
    print(f"  {corpus.class_names[rep.class_label]:>6}/{rep.cluster_index}: "
          f"{count:2d} of {reference.d} features inside{marker}")
print(f"predicted: {corpus.class_names[outcome.predicted_class]} "
      f"(cross-class tie: {outcome.tie})")

# And the whole test set.
hits = sum(classify(s, reference).predicted_class == t
           for s, t in zip(test_x, test_y))
print(f"\ntest accuracy with 6 interval rows: {100.0 * hits / len(test_y):.1f}% "
      f"({hits}/{len(test_y)})")
