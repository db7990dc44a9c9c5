"""Sweep training fractions and cluster counts, then print the summary table.

Run:  python demos/03_experiment_sweep.py
"""

from logosym import ExperimentConfig, run_experiment
from logosym.reports import render_experiment_text
from logosym.synth import generate_synthetic

# A desk-sized version of the full protocol: every (fraction, k) cell is
# repeated for `trials` seeded splits and aggregated as min/max/avg.
config = ExperimentConfig(
    train_fractions=(0.5, 0.6, 0.7),
    k_values=(2, 3, 4),
    trials=5,
    seed=1,
)
corpus = generate_synthetic(n_per_class=30, seed=1)

report = run_experiment(config, corpus)
print(render_experiment_text(report))

best = report.best
print(f"winning cell: train-test {best.fraction:.0%}/{1 - best.fraction:.0%} "
      f"with k={best.k}, average F {best.f_measure.average:.2f}")
print("(per fraction, the k with the highest average F-measure is kept; "
      "the overall best row is chosen the same way)")

timing = report.timing
slowest = max(timing, key=timing.get)
print(f"\nslowest cell by per-sample time: {slowest} "
      f"({timing[slowest] * 1e6:.0f} us/sample)")
