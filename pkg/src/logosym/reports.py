"""Serialization of experiment and comparison reports.

Three output styles: JSON for machines, aligned plain-text tables for reading
in a terminal, and a CSV dump of the full sweep grid. Wall-clock timings go
to a separate timing.json so the other artifacts are byte-deterministic for a
fixed seed.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .evaluation import ConfusionMatrix
from .experiment import CellResult, ComparisonReport, ExperimentReport, MetricStats


def fraction_label(fraction: float) -> str:
    """0.7 -> '70-30' (train-test percentage)."""
    train = round(fraction * 100)
    return f"{train}-{100 - train}"


def _stats_dict(stats: MetricStats | None):
    if stats is None:
        return None
    return {"min": stats.minimum, "max": stats.maximum, "avg": stats.average}


def _cell_dict(cell: CellResult) -> dict:
    return {
        "fraction": cell.fraction,
        "train_test": fraction_label(cell.fraction),
        "k": cell.k,
        "trials": cell.trials,
        "skipped": cell.skipped,
        "skip_reason": cell.skip_reason,
        "accuracy": _stats_dict(cell.accuracy),
        "precision": _stats_dict(cell.precision),
        "recall": _stats_dict(cell.recall),
        "f_measure": _stats_dict(cell.f_measure),
    }


def experiment_report_dict(report: ExperimentReport, include_timing: bool = False) -> dict:
    d = {
        "config": report.config,
        "class_names": list(report.class_names),
        "cells": [_cell_dict(c) for c in report.cells],
        "best_per_fraction": {
            fraction_label(f): _cell_dict(c) for f, c in report.best_per_fraction.items()
        },
        "best": _cell_dict(report.best) if report.best is not None else None,
    }
    if include_timing:
        d["timing_seconds_per_sample"] = dict(sorted(report.timing.items()))
    return d


def _json_bytes(payload: dict) -> bytes:
    return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode()


_METRICS = ("accuracy", "precision", "recall", "f_measure")


def render_experiment_text(report: ExperimentReport) -> str:
    """Best row per training fraction plus the overall best, like a summary
    table with Min/Max/Avg triples per metric and the winning cluster count."""
    header = (["Train-Test %"]
              + [f"{name.capitalize()[:4]} {agg}" for name in _METRICS
                 for agg in ("Min", "Max", "Avg")]
              + ["Cluster #"])
    rows = []
    for fraction in sorted(report.best_per_fraction):
        cell = report.best_per_fraction[fraction]
        rows.append(_summary_row(fraction_label(fraction), cell))
    if report.best is not None:
        rows.append(_summary_row("Best", report.best))
    return _render_table("Sweep results (best cluster count per training fraction)",
                         header, rows)


def _summary_row(label: str, cell: CellResult) -> list[str]:
    row = [label]
    for name in _METRICS:
        stats: MetricStats = getattr(cell, name)
        row += [f"{stats.minimum:.2f}", f"{stats.maximum:.2f}", f"{stats.average:.2f}"]
    row.append(str(cell.k))
    return row


def _render_table(title: str, header: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [title]
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def render_confusion_text(cm: ConfusionMatrix, title: str) -> str:
    names = cm.class_names or [str(i) for i in range(cm.m)]
    header = [""] + list(names)
    rows = []
    for i in range(cm.m):
        label = f"{names[i]} ({int(cm.counts[i].sum())})"
        rows.append([label] + [str(int(v)) for v in cm.counts[i]])
    return _render_table(title, header, rows)


def grid_csv_bytes(report: ExperimentReport) -> bytes:
    """Full sweep grid, one row per (fraction, k) cell."""
    buf = []
    header = ["fraction", "train_test", "k", "trials", "skipped"]
    for name in _METRICS:
        header += [f"{name}_min", f"{name}_max", f"{name}_avg"]
    buf.append(",".join(header))
    for cell in report.cells:
        row = [f"{cell.fraction:g}", fraction_label(cell.fraction),
               str(cell.k), str(cell.trials), str(cell.skipped).lower()]
        for name in _METRICS:
            stats = getattr(cell, name)
            if stats is None:
                row += ["", "", ""]
            else:
                row += [repr(stats.minimum), repr(stats.maximum), repr(stats.average)]
        buf.append(",".join(row))
    return ("\n".join(buf) + "\n").encode()


def write_experiment_report(report: ExperimentReport, out_dir) -> dict[str, Path]:
    """Write report.json, report.txt and grid.csv (deterministic) plus
    timing.json (wall clock, non-deterministic) into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "json": out / "report.json",
        "text": out / "report.txt",
        "grid": out / "grid.csv",
        "timing": out / "timing.json",
    }
    paths["json"].write_bytes(_json_bytes(experiment_report_dict(report)))
    paths["text"].write_text(render_experiment_text(report))
    paths["grid"].write_bytes(grid_csv_bytes(report))
    paths["timing"].write_bytes(_json_bytes(
        {"seconds_per_sample": dict(sorted(report.timing.items()))}))
    return paths


MODEL_TITLES = {
    "proposed": "Interval + clustering (proposed)",
    "model1": "1-NN on all training samples (model 1)",
    "model2": "1-NN on cluster means (model 2)",
}


def comparison_report_dict(report: ComparisonReport, include_timing: bool = False) -> dict:
    models = {}
    for kind, mc in report.models.items():
        entry = {
            "best_train_test": fraction_label(mc.best_fraction),
            "best_fraction": mc.best_fraction,
            "best_k": mc.best_k,
            "accuracy": _stats_dict(mc.accuracy),
            "precision": _stats_dict(mc.precision),
            "recall": _stats_dict(mc.recall),
            "f_measure": _stats_dict(mc.f_measure),
            "pooled_confusion": mc.pooled_confusion.counts.tolist(),
            "misclassified": [list(t) for t in mc.misclassified],
            "comparisons_per_sample": mc.comparisons_per_sample,
        }
        if include_timing:
            entry["avg_seconds_per_sample"] = mc.avg_seconds_per_sample
        models[kind] = entry
    return {
        "config": report.config,
        "class_names": list(report.class_names),
        "models": models,
        "split_checksums": dict(sorted(report.split_checksums.items())),
    }


def render_comparison_text(report: ComparisonReport) -> str:
    chunks = []
    for kind in report.models:
        mc = report.models[kind]
        title = MODEL_TITLES.get(kind, kind)
        header = ["", "Min", "Max", "Avg"]
        rows = []
        for name in _METRICS:
            stats: MetricStats = getattr(mc, name)
            rows.append([name.capitalize(),
                         f"{stats.minimum:.2f}", f"{stats.maximum:.2f}",
                         f"{stats.average:.2f}"])
        suffix = f"train-test {fraction_label(mc.best_fraction)}"
        if mc.best_k is not None:
            suffix += f", cluster #{mc.best_k}"
        chunks.append(_render_table(f"{title} - best results ({suffix})", header, rows))
        chunks.append(render_confusion_text(
            mc.pooled_confusion,
            f"{title} - pooled confusion matrix over trials"))
    timing_rows = [
        [MODEL_TITLES.get(kind, kind),
         f"{mc.avg_seconds_per_sample * 1e3:.3f} ms",
         str(mc.comparisons_per_sample)]
        for kind, mc in report.models.items()
    ]
    chunks.append(_render_table("Per-sample classification cost at each model's best config",
                                ["Model", "Avg time/sample", "Comparisons/sample"],
                                timing_rows))
    return "\n".join(chunks)


def write_comparison_report(report: ComparisonReport, out_dir) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "json": out / "comparison.json",
        "text": out / "comparison.txt",
        "misses": out / "misclassified.csv",
        "timing": out / "timing.json",
    }
    paths["json"].write_bytes(_json_bytes(comparison_report_dict(report)))
    paths["text"].write_text(render_comparison_text(report))
    with open(paths["misses"], "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model", "image", "true_class", "predicted_class"])
        for kind, mc in report.models.items():
            for ident, true_name, pred_name in mc.misclassified:
                writer.writerow([kind, ident, true_name, pred_name])
    paths["timing"].write_bytes(_json_bytes({
        "seconds_per_sample": {k: mc.avg_seconds_per_sample
                               for k, mc in report.models.items()},
        "comparisons_per_sample": {k: mc.comparisons_per_sample
                                   for k, mc in report.models.items()},
    }))
    return paths
