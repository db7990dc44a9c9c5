"""Labeled image corpora: directory ingestion and stratified splitting.

A corpus directory holds one subdirectory per class; class indices follow the
lexicographic order of the subdirectory names so they are stable across runs.
Entries may carry an in-memory image (synthetic corpora) or a file path that
is loaded lazily.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError
from .imaging import ImageBuffer, read_image


@dataclass(frozen=True)
class CorpusEntry:
    label: int
    ident: str                      # stable identifier used in reports
    path: str | None = None
    image: ImageBuffer | None = None

    def load(self) -> ImageBuffer:
        if self.image is not None:
            return self.image
        return read_image(self.path)


@dataclass(frozen=True)
class LabeledCorpus:
    entries: tuple[CorpusEntry, ...]
    class_names: tuple[str, ...]
    skipped_files: int = 0          # unreadable files encountered during loading

    def __post_init__(self):
        for e in self.entries:
            if not 0 <= e.label < len(self.class_names):
                raise DataError(f"entry {e.ident} has unknown class label {e.label}")

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def m(self) -> int:
        return len(self.class_names)

    def labels(self) -> np.ndarray:
        return np.array([e.label for e in self.entries])

    def class_counts(self) -> np.ndarray:
        return np.bincount(self.labels(), minlength=self.m)

    def subset(self, indices) -> "LabeledCorpus":
        return LabeledCorpus(
            entries=tuple(self.entries[i] for i in indices),
            class_names=self.class_names,
        )


def load_corpus(root) -> LabeledCorpus:
    """Scan a directory of class subdirectories into a corpus.

    Files that cannot be decoded as images are skipped and counted in
    `skipped_files`. Fails if there are fewer than two class directories or
    any class ends up empty.
    """
    root = Path(root)
    if not root.is_dir():
        raise DataError(f"corpus root {root} is not a directory")
    class_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if len(class_dirs) < 2:
        raise DataError(f"need >= 2 class directories under {root}, found {len(class_dirs)}")
    class_names = tuple(p.name for p in class_dirs)
    entries = []
    skipped = 0
    for label, cdir in enumerate(class_dirs):
        found = 0
        for f in sorted(p for p in cdir.iterdir() if p.is_file()):
            try:
                read_image(f)
            except DataError:
                skipped += 1
                continue
            entries.append(CorpusEntry(label=label, ident=f"{cdir.name}/{f.name}", path=str(f)))
            found += 1
        if found == 0:
            raise DataError(f"class directory {cdir} holds no readable images")
    return LabeledCorpus(entries=tuple(entries), class_names=class_names, skipped_files=skipped)


def split_indices(labels: np.ndarray, fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Stratified train/test split over label indices.

    Per class, floor(fraction * n) samples (at least 1) are drawn for
    training with a seeded shuffle; the rest become the test set. Returns
    sorted index arrays that are disjoint and jointly exhaustive.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must be in (0, 1), got {fraction}")
    y = np.asarray(labels)
    rng = np.random.default_rng(seed)
    train, test = [], []
    for cls in np.unique(y):
        idx = np.flatnonzero(y == cls)
        if idx.size < 2:
            raise DataError(f"class {cls} has {idx.size} sample(s); need >= 2 to split")
        perm = rng.permutation(idx)
        n_train = max(1, math.floor(fraction * idx.size))
        train.extend(perm[:n_train])
        test.extend(perm[n_train:])
    return np.sort(np.asarray(train, dtype=int)), np.sort(np.asarray(test, dtype=int))


def split(corpus: LabeledCorpus, fraction: float, seed: int) -> tuple[LabeledCorpus, LabeledCorpus]:
    """Stratified split of a corpus into (train, test) sub-corpora."""
    train_idx, test_idx = split_indices(corpus.labels(), fraction, seed)
    return corpus.subset(train_idx), corpus.subset(test_idx)
