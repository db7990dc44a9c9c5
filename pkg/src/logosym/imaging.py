"""Image preprocessing and global feature extraction.

A logo image is resized to a common raster (200x200 by default), converted to
grayscale, and summarized by 60 fused features:

* 48 color features: the RGB raster is cut into a coarse grid of 8 blocks
  (4 columns x 2 rows); each block contributes, per channel, its mean
  intensity and its percentage of the whole-image channel mass.
* 8 texture features: mean and standard deviation of the absolute response
  of a steerable first-order Gaussian derivative filter at 0, +45, -45 and
  90 degrees.
* 4 shape features: magnitudes of the (2,0) and (2,2) Zernike moments over
  the inscribed unit disk, for the image as-is and rotated by 90 degrees.

All extractors are pure functions of the pixel content.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import DataError, InvalidImageError

GRAY_WEIGHTS = (0.299, 0.587, 0.114)  # ITU-R BT.601 luma

COLOR_FEATURE_COUNT = 48
TEXTURE_FEATURE_COUNT = 8
SHAPE_FEATURE_COUNT = 4
FEATURE_COUNT = COLOR_FEATURE_COUNT + TEXTURE_FEATURE_COUNT + SHAPE_FEATURE_COUNT


@dataclass(frozen=True)
class ImageBuffer:
    """Raw pixel raster: shape (height, width, channels), intensities in [0, 255].

    channels is 1 (grayscale) or 3 (RGB).
    """

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim == 2:
            px = px[:, :, None]
        if px.ndim != 3:
            raise InvalidImageError(f"expected 2-D or 3-D pixel array, got ndim={px.ndim}")
        h, w, c = px.shape
        if h < 1 or w < 1:
            raise InvalidImageError(f"zero-dimension image: {w}x{h}")
        if c not in (1, 3):
            raise InvalidImageError(f"channels must be 1 or 3, got {c}")
        if not np.issubdtype(px.dtype, np.number):
            raise InvalidImageError(f"non-numeric pixel dtype {px.dtype}")
        if px.size and (px.min() < 0 or px.max() > 255):
            raise InvalidImageError("pixel intensities must lie in [0, 255]")
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def channels(self) -> int:
        return self.pixels.shape[2]

    def plane(self) -> np.ndarray:
        """Pixels as float64; grayscale buffers come back 2-D."""
        px = self.pixels.astype(np.float64)
        return px[:, :, 0] if self.channels == 1 else px


@dataclass(frozen=True)
class FeatureParams:
    """Tunable extractor parameters. Defaults give the 48/8/4 layout."""

    grid_rows: int = 2
    grid_cols: int = 4
    filter_sigma: float = 1.0
    filter_size: int = 7
    zernike_moments: tuple[tuple[int, int], ...] = ((2, 0), (2, 2))

    def feature_count(self) -> int:
        return (
            self.grid_rows * self.grid_cols * 6
            + TEXTURE_FEATURE_COUNT
            + 2 * len(self.zernike_moments)
        )


DEFAULT_PARAMS = FeatureParams()


def read_image(path) -> ImageBuffer:
    """Load an 8-bit PNG/JPEG file as an RGB ImageBuffer."""
    from PIL import Image

    try:
        with Image.open(path) as im:
            rgb = im.convert("RGB")
            px = np.asarray(rgb, dtype=np.uint8)
    except Exception as exc:
        raise DataError(f"cannot read image {path}: {exc}") from exc
    return ImageBuffer(px)


def write_image(buf: ImageBuffer, path) -> None:
    from PIL import Image

    px = np.rint(buf.pixels).astype(np.uint8)
    if buf.channels == 1:
        Image.fromarray(px[:, :, 0], mode="L").save(path)
    else:
        Image.fromarray(px, mode="RGB").save(path)


def _resize_bilinear(src: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    """Bilinear resampling with center-aligned pixel grids.

    Constant images stay exactly constant and same-size calls are identity.
    """
    h, w = src.shape[:2]
    ry = (np.arange(out_h) + 0.5) * (h / out_h) - 0.5
    rx = (np.arange(out_w) + 0.5) * (w / out_w) - 0.5
    ry = np.clip(ry, 0, h - 1)
    rx = np.clip(rx, 0, w - 1)
    y0 = np.floor(ry).astype(int)
    x0 = np.floor(rx).astype(int)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    wy = (ry - y0)[:, None, None]
    wx = (rx - x0)[None, :, None]
    s = src.astype(np.float64)
    top = s[y0][:, x0] * (1 - wx) + s[y0][:, x1] * wx
    bot = s[y1][:, x0] * (1 - wx) + s[y1][:, x1] * wx
    return top * (1 - wy) + bot * wy


def preprocess(image: ImageBuffer, target: tuple[int, int] = (200, 200)) -> tuple[ImageBuffer, ImageBuffer]:
    """Resize an RGB logo to `target` (height, width) and derive its grayscale.

    Returns (rgb, gray); gray is the BT.601 weighted sum rounded to the
    nearest integer.
    """
    if image.channels != 3:
        raise InvalidImageError(f"preprocess expects an RGB image, got {image.channels} channel(s)")
    th, tw = target
    if th < 1 or tw < 1:
        raise InvalidImageError(f"invalid target size {target}")
    resized = _resize_bilinear(image.pixels, th, tw)
    rgb_px = np.clip(np.rint(resized), 0, 255).astype(np.uint8)
    wr, wg, wb = GRAY_WEIGHTS
    lum = wr * rgb_px[:, :, 0] + wg * rgb_px[:, :, 1] + wb * rgb_px[:, :, 2]
    gray_px = np.clip(np.rint(lum), 0, 255).astype(np.uint8)
    return ImageBuffer(rgb_px), ImageBuffer(gray_px)


def _block_slices(n: int, parts: int) -> list[slice]:
    bounds = np.linspace(0, n, parts + 1).round().astype(int)
    return [slice(bounds[i], bounds[i + 1]) for i in range(parts)]


def color_features(rgb: ImageBuffer, params: FeatureParams = DEFAULT_PARAMS) -> np.ndarray:
    """Per-block mean and whole-image percentage for each RGB channel.

    Blocks are enumerated row-major over a grid_rows x grid_cols grid; each
    block emits (mean, percentage) per channel, so the default 8-block grid
    yields 48 values. A channel with zero total mass gets percentage 0.
    """
    if rgb.channels != 3:
        raise InvalidImageError("color_features expects an RGB buffer")
    px = rgb.pixels.astype(np.float64)
    channel_totals = px.sum(axis=(0, 1))  # (3,)
    row_slices = _block_slices(rgb.height, params.grid_rows)
    col_slices = _block_slices(rgb.width, params.grid_cols)
    out = []
    for rs in row_slices:
        for cs in col_slices:
            block = px[rs, cs]
            means = block.mean(axis=(0, 1))
            sums = block.sum(axis=(0, 1))
            for ch in range(3):
                out.append(means[ch])
                if channel_totals[ch] > 0:
                    out.append(100.0 * sums[ch] / channel_totals[ch])
                else:
                    out.append(0.0)
    return np.asarray(out)


def gaussian_derivative_kernels(sigma: float = 1.0, size: int = 7) -> tuple[np.ndarray, np.ndarray]:
    """Sampled first derivatives of an isotropic Gaussian (x- and y-direction).

    The Gaussian is normalized to unit sum before differentiation, so the
    kernels form the steering basis Gx, Gy with Gx being Gy transposed.
    """
    if size % 2 == 0 or size < 3:
        raise ValueError(f"kernel size must be odd and >= 3, got {size}")
    half = size // 2
    y, x = np.mgrid[-half:half + 1, -half:half + 1].astype(np.float64)
    g = np.exp(-(x * x + y * y) / (2.0 * sigma * sigma))
    g /= g.sum()
    gx = -x / sigma**2 * g
    gy = -y / sigma**2 * g
    return gx, gy


# (label, cos, sin) in output order: 0, +45, -45, 90 degrees
_STEER_ANGLES = (
    (0.0, 1.0, 0.0),
    (45.0, np.sqrt(0.5), np.sqrt(0.5)),
    (-45.0, np.sqrt(0.5), -np.sqrt(0.5)),
    (90.0, 0.0, 1.0),
)


def texture_features(gray: ImageBuffer, params: FeatureParams = DEFAULT_PARAMS) -> np.ndarray:
    """Mean and std of |steered Gaussian derivative| at 0, +45, -45, 90 degrees.

    Borders are handled by reflection; the standard deviation uses the n-1
    denominator.
    """
    if gray.channels != 1:
        raise InvalidImageError("texture_features expects a grayscale buffer")
    img = gray.plane()
    gx, gy = gaussian_derivative_kernels(params.filter_sigma, params.filter_size)
    rx = ndimage.convolve(img, gx, mode="reflect")
    ry = ndimage.convolve(img, gy, mode="reflect")
    out = []
    for _theta, c, s in _STEER_ANGLES:
        resp = np.abs(c * rx + s * ry)
        out.append(resp.mean())
        out.append(resp.std(ddof=1))
    return np.asarray(out)


def _zernike_radial(n: int, m: int, rho: np.ndarray) -> np.ndarray:
    from math import factorial

    m = abs(m)
    r = np.zeros_like(rho)
    for s in range((n - m) // 2 + 1):
        coef = ((-1) ** s * factorial(n - s)) / (
            factorial(s) * factorial((n + m) // 2 - s) * factorial((n - m) // 2 - s)
        )
        r += coef * rho ** (n - 2 * s)
    return r


_zernike_cache: dict = {}


def _zernike_basis(shape: tuple[int, int], moments: tuple[tuple[int, int], ...]):
    """Conjugate Zernike basis sampled on the inscribed unit disk.

    Returns {(n, m): weighted conjugate basis array}; the per-pixel area
    element 1/R^2 and the (n+1)/pi normalization are folded in, so a moment
    is just the masked elementwise sum against the image.
    """
    key = (shape, moments)
    if key in _zernike_cache:
        return _zernike_cache[key]
    h, w = shape
    radius = (min(h, w) - 1) / 2.0 if min(h, w) > 1 else 1.0
    ys = (np.arange(h) - (h - 1) / 2.0) / radius
    xs = (np.arange(w) - (w - 1) / 2.0) / radius
    x, y = np.meshgrid(xs, ys)
    rho = np.sqrt(x * x + y * y)
    theta = np.arctan2(y, x)
    inside = rho <= 1.0
    basis = {}
    for n, m in moments:
        v = _zernike_radial(n, m, rho) * np.exp(-1j * m * theta)
        v *= (n + 1) / np.pi / radius**2
        v[~inside] = 0.0
        basis[(n, m)] = v
    if len(_zernike_cache) > 32:
        _zernike_cache.clear()
    _zernike_cache[key] = basis
    return basis


def zernike_magnitudes(img: np.ndarray, moments: tuple[tuple[int, int], ...]) -> list[float]:
    basis = _zernike_basis(img.shape, moments)
    return [float(np.abs(np.sum(img * basis[(n, m)]))) for n, m in moments]


def shape_features(gray: ImageBuffer, params: FeatureParams = DEFAULT_PARAMS) -> np.ndarray:
    """Zernike moment magnitudes at two orientations.

    Layout for the default moments: (|Z20|, |Z22|) for the image as-is,
    then the same pair for the image rotated 90 degrees (exact pixel-grid
    rotation). Pixels outside the inscribed disk are ignored.
    """
    if gray.channels != 1:
        raise InvalidImageError("shape_features expects a grayscale buffer")
    img = gray.plane()
    out = zernike_magnitudes(img, params.zernike_moments)
    out += zernike_magnitudes(np.rot90(img), params.zernike_moments)
    return np.asarray(out)


def extract(rgb: ImageBuffer, gray: ImageBuffer, params: FeatureParams = DEFAULT_PARAMS) -> np.ndarray:
    """Fused raw feature vector: color || texture || shape."""
    vec = np.concatenate([
        color_features(rgb, params),
        texture_features(gray, params),
        shape_features(gray, params),
    ])
    expected = params.feature_count()
    if vec.shape != (expected,):
        raise InvalidImageError(f"feature vector has {vec.shape[0]} entries, expected {expected}")
    if not np.all(np.isfinite(vec)):
        raise InvalidImageError("non-finite feature value")
    return vec


def features_for_image(image: ImageBuffer, params: FeatureParams = DEFAULT_PARAMS,
                       target: tuple[int, int] = (200, 200)) -> np.ndarray:
    """Preprocess + extract in one step."""
    rgb, gray = preprocess(image, target)
    return extract(rgb, gray, params)


@dataclass(frozen=True)
class Normalizer:
    """Per-feature min-max ranges observed on a training matrix."""

    mins: np.ndarray
    maxs: np.ndarray

    def __post_init__(self):
        if np.any(self.maxs < self.mins):
            raise ValueError("normalizer has max < min")


def fit_normalizer(train: np.ndarray) -> Normalizer:
    """Column-wise min/max from the training matrix (n x d, n >= 1)."""
    m = np.asarray(train, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] < 1:
        raise ValueError("training matrix must be 2-D with at least one row")
    return Normalizer(mins=m.min(axis=0), maxs=m.max(axis=0))


def apply_normalizer(norm: Normalizer, values: np.ndarray) -> np.ndarray:
    """Map x to (x - min) / (max - min) per feature; constant features map to 0.

    Values outside the training range are NOT clamped, so test samples may
    fall outside [0, 1].
    """
    v = np.asarray(values, dtype=np.float64)
    span = norm.maxs - norm.mins
    safe = np.where(span == 0, 1.0, span)
    out = (v - norm.mins) / safe
    return np.where(span == 0, 0.0, out)


def save_feature_csv(path, features: np.ndarray, labels: list[str], paths: list[str]) -> None:
    """Persist a feature matrix: one row per image, feature columns, then the
    class label and the image path. Floats are written with full precision."""
    features = np.asarray(features, dtype=np.float64)
    n, d = features.shape
    if not (n == len(labels) == len(paths)):
        raise ValueError("features, labels and paths must have matching lengths")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"f{i + 1:02d}" for i in range(d)] + ["label", "path"])
        for row, label, p in zip(features, labels, paths):
            writer.writerow([repr(float(x)) for x in row] + [label, p])


def load_feature_csv(path) -> tuple[np.ndarray, list[str], list[str]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"empty feature file {path}")
        if len(header) < 3 or header[-2] != "label" or header[-1] != "path":
            raise DataError(f"{path}: expected feature columns followed by 'label' and 'path'")
        d = len(header) - 2
        rows, labels, paths = [], [], []
        for line_no, rec in enumerate(reader, start=2):
            if len(rec) != d + 2:
                raise DataError(f"{path}:{line_no}: expected {d + 2} columns, got {len(rec)}")
            try:
                rows.append([float(x) for x in rec[:d]])
            except ValueError as exc:
                raise DataError(f"{path}:{line_no}: non-numeric feature value") from exc
            labels.append(rec[d])
            paths.append(rec[d + 1])
    if not rows:
        raise DataError(f"{path}: no feature rows")
    return np.asarray(rows), labels, paths
