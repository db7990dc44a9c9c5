"""Command-line interface.

Subcommands cover the whole workflow:

    synth       write a deterministic synthetic corpus to a directory
    extract     corpus directory -> raw feature CSV
    train       feature CSV -> interval model (CSV + JSON sidecar)
    classify    trained model + image files -> JSON lines on stdout
    experiment  full sweep from a config file -> report directory
    compare     three-model comparison from a config file -> report directory

Exit codes: 0 success, 1 usage error, 2 data error, 3 infeasible configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import imaging, model_io, reports, synth
from .classify import classify
from .corpus import load_corpus
from .errors import DataError, InfeasibleError, InvalidImageError, LogosymError
from .experiment import ExperimentConfig, compare_models, load_config, run_experiment
from .symbolic import build_reference

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INFEASIBLE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments; we reserve 2 for data
    # errors, so route parse failures through our own exception.
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="logosym",
                     description="Interval-based logo image classification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic logo corpus")
    p.add_argument("--n", type=int, required=True, help="images per class")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--size", type=int, default=200)
    p.add_argument("--out", required=True, help="output corpus directory")

    p = sub.add_parser("extract", help="extract features from a corpus directory")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True, help="output feature CSV")
    p.add_argument("--config", help="optional key=value config for extractor parameters")

    p = sub.add_parser("train", help="build an interval model from a feature CSV")
    p.add_argument("--features", required=True)
    p.add_argument("--k", type=int, required=True, help="clusters per class")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output model CSV")
    p.add_argument("--config", help="optional key=value config for extractor parameters")

    p = sub.add_parser("classify", help="classify images with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("images", nargs="+", help="image files to classify")

    p = sub.add_parser("experiment", help="run the sweep described by a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="report output directory")
    p.add_argument("--corpus", help="corpus directory (overrides config)")

    p = sub.add_parser("compare", help="run the model comparison from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="report output directory")
    p.add_argument("--corpus", help="corpus directory (overrides config)")

    return parser


def _config_from(path: str | None) -> ExperimentConfig:
    return load_config(path) if path else ExperimentConfig()


def _resolve_corpus(config: ExperimentConfig, override: str | None):
    if override:
        return load_corpus(override)
    if config.corpus_dir:
        return load_corpus(config.corpus_dir)
    if config.synthetic_per_class:
        return synth.generate_synthetic(config.synthetic_per_class, config.seed,
                                        config.synthetic_size)
    raise UsageError("no corpus: pass --corpus or set corpus_dir / "
                     "synthetic_per_class in the config")


def _cmd_synth(args) -> int:
    corpus = synth.generate_synthetic(args.n, args.seed, args.size)
    written = synth.write_corpus(corpus, args.out)
    print(f"wrote {len(written)} images across {corpus.m} classes to {args.out}")
    return EXIT_OK


def _cmd_extract(args) -> int:
    config = _config_from(args.config)
    corpus = load_corpus(args.corpus)
    if corpus.skipped_files:
        print(f"warning: skipped {corpus.skipped_files} unreadable file(s)",
              file=sys.stderr)
    params = config.feature_params()
    target = (config.image_size, config.image_size)
    feats, labels, idents = [], [], []
    for entry in corpus.entries:
        feats.append(imaging.features_for_image(entry.load(), params, target))
        labels.append(corpus.class_names[entry.label])
        idents.append(entry.path or entry.ident)
    imaging.save_feature_csv(args.out, np.vstack(feats), labels, idents)
    print(f"extracted {len(feats)} x {feats[0].shape[0]} features to {args.out}")
    return EXIT_OK


def _cmd_train(args) -> int:
    config = _config_from(args.config)
    features, label_names, _paths = imaging.load_feature_csv(args.features)
    class_names = sorted(set(label_names))
    if len(class_names) < 2:
        raise DataError(f"{args.features}: need >= 2 classes, found {len(class_names)}")
    name_to_idx = {n: i for i, n in enumerate(class_names)}
    labels = np.array([name_to_idx[n] for n in label_names])
    if args.k < 1:
        raise UsageError(f"--k must be >= 1, got {args.k}")
    norm = imaging.fit_normalizer(features)
    reference = build_reference(imaging.apply_normalizer(norm, features), labels,
                                args.k, seed=args.seed, class_names=class_names,
                                max_iter=config.kmeans_max_iter, tol=config.kmeans_tol)
    model = model_io.TrainedModel(reference=reference, normalizer=norm,
                                  params=config.feature_params(),
                                  image_size=config.image_size)
    model_io.save_model(model, args.out)
    print(f"trained interval model: {reference.m} classes x {reference.k} clusters "
          f"-> {args.out}")
    return EXIT_OK


def _cmd_classify(args) -> int:
    model = model_io.load_model(args.model)
    target = (model.image_size, model.image_size)
    for image_path in args.images:
        image = imaging.read_image(image_path)
        raw = imaging.features_for_image(image, model.params, target)
        sample = imaging.apply_normalizer(model.normalizer, raw)
        outcome = classify(sample, model.reference)
        record = {
            "image": image_path,
            "predicted_class": model.class_names[outcome.predicted_class],
            "best_representative": {
                "class": model.class_names[outcome.best_representative[0]],
                "cluster": outcome.best_representative[1],
            },
            "acceptance_counts": [int(c) for c in outcome.acceptance_counts],
            "tie": outcome.tie,
        }
        print(json.dumps(record, sort_keys=True))
    return EXIT_OK


def _cmd_experiment(args) -> int:
    config = load_config(args.config)
    corpus = _resolve_corpus(config, args.corpus)
    out_dir = Path(args.out)
    report = run_experiment(config, corpus, cache_dir=out_dir / "cache")
    if report.best is None:
        raise InfeasibleError("every sweep cell was infeasible; "
                              "lower k_values or enlarge the corpus")
    paths = reports.write_experiment_report(report, out_dir)
    print(Path(paths["text"]).read_text(), end="")
    print(f"report written to {out_dir}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    config = load_config(args.config)
    corpus = _resolve_corpus(config, args.corpus)
    out_dir = Path(args.out)
    report = compare_models(config, corpus, cache_dir=out_dir / "cache")
    paths = reports.write_comparison_report(report, out_dir)
    print(Path(paths["text"]).read_text(), end="")
    print(f"report written to {out_dir}")
    return EXIT_OK


_COMMANDS = {
    "synth": _cmd_synth,
    "extract": _cmd_extract,
    "train": _cmd_train,
    "classify": _cmd_classify,
    "experiment": _cmd_experiment,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"infeasible configuration: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (DataError, InvalidImageError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except LogosymError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
