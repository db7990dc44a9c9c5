"""Trained-model persistence for the command line.

The reference matrix itself lives in model.csv (see symbolic.save_reference_csv).
Classifying a raw image additionally needs the training normalizer, the class
names and the feature parameters, so those travel in a JSON sidecar next to
the CSV (<model>.meta.json). Loading validates both halves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError
from .imaging import FeatureParams, Normalizer
from .symbolic import ReferenceMatrix, load_reference_csv, save_reference_csv


@dataclass(frozen=True)
class TrainedModel:
    reference: ReferenceMatrix
    normalizer: Normalizer
    params: FeatureParams
    image_size: int = 200

    @property
    def class_names(self) -> list[str]:
        if self.reference.class_names is not None:
            return list(self.reference.class_names)
        return [str(i) for i in range(self.reference.m)]


def meta_path_for(model_path) -> Path:
    return Path(str(model_path) + ".meta.json")


def save_model(model: TrainedModel, model_path) -> None:
    save_reference_csv(model.reference, model_path)
    meta = {
        "class_names": model.class_names,
        "image_size": model.image_size,
        "normalizer": {
            "mins": [float(v) for v in model.normalizer.mins],
            "maxs": [float(v) for v in model.normalizer.maxs],
        },
        "feature_params": {
            "grid_rows": model.params.grid_rows,
            "grid_cols": model.params.grid_cols,
            "filter_sigma": model.params.filter_sigma,
            "filter_size": model.params.filter_size,
            "zernike_moments": [list(nm) for nm in model.params.zernike_moments],
        },
    }
    meta_path_for(model_path).write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")


def load_model(model_path) -> TrainedModel:
    meta_file = meta_path_for(model_path)
    if not meta_file.exists():
        raise DataError(f"missing model sidecar {meta_file}")
    try:
        meta = json.loads(meta_file.read_text())
        class_names = [str(n) for n in meta["class_names"]]
        norm = Normalizer(
            mins=np.asarray(meta["normalizer"]["mins"], dtype=np.float64),
            maxs=np.asarray(meta["normalizer"]["maxs"], dtype=np.float64),
        )
        fp = meta["feature_params"]
        params = FeatureParams(
            grid_rows=int(fp["grid_rows"]),
            grid_cols=int(fp["grid_cols"]),
            filter_sigma=float(fp["filter_sigma"]),
            filter_size=int(fp["filter_size"]),
            zernike_moments=tuple(tuple(int(x) for x in nm) for nm in fp["zernike_moments"]),
        )
        image_size = int(meta.get("image_size", 200))
    except (KeyError, ValueError, TypeError) as exc:
        raise DataError(f"malformed model sidecar {meta_file}: {exc}") from exc
    reference = load_reference_csv(model_path, class_names=class_names)
    if norm.mins.shape[0] != reference.d:
        raise DataError(
            f"normalizer covers {norm.mins.shape[0]} features, model has {reference.d}")
    return TrainedModel(reference=reference, normalizer=norm,
                        params=params, image_size=image_size)
