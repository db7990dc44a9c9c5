"""Procedural stand-in corpus: text-only, symbol-only and combined logos.

Every image is drawn deterministically from a seeded generator, so the same
(n, seed) call always yields byte-identical corpora. The three classes differ
structurally: glyph-like strokes in a horizontal band, one large hatched
geometric primitive, or a composition of both, with per-image jitter in
colors, placement and sizes providing intra-class variation.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .corpus import CorpusEntry, LabeledCorpus
from .imaging import ImageBuffer, write_image

CLASS_NAMES = ("both", "symbol", "text")  # lexicographic, matching load_corpus


def _grid(size: int) -> tuple[np.ndarray, np.ndarray]:
    ys, xs = np.mgrid[0:size, 0:size].astype(np.float64)
    return xs, ys


def _fill_circle(img, xs, ys, cx, cy, r, color):
    mask = (xs - cx) ** 2 + (ys - cy) ** 2 <= r * r
    img[mask] = color
    return mask


def _fill_regular_polygon(img, xs, ys, cx, cy, r, sides, angle, color):
    # Convex polygon as intersection of half-planes between adjacent vertices.
    thetas = angle + 2 * np.pi * np.arange(sides) / sides
    vx = cx + r * np.cos(thetas)
    vy = cy + r * np.sin(thetas)
    mask = np.ones_like(xs, dtype=bool)
    for i in range(sides):
        x0, y0 = vx[i], vy[i]
        x1, y1 = vx[(i + 1) % sides], vy[(i + 1) % sides]
        cross = (x1 - x0) * (ys - y0) - (y1 - y0) * (xs - x0)
        mask &= cross >= 0
    img[mask] = color
    return mask


def _stroke(img, xs, ys, p0, p1, thickness, color):
    # Distance from pixel centers to the segment p0-p1.
    d = np.array(p1, dtype=float) - np.array(p0, dtype=float)
    length2 = float(d @ d)
    if length2 == 0:
        t = np.zeros_like(xs)
    else:
        t = np.clip(((xs - p0[0]) * d[0] + (ys - p0[1]) * d[1]) / length2, 0.0, 1.0)
    px = p0[0] + t * d[0]
    py = p0[1] + t * d[1]
    mask = (xs - px) ** 2 + (ys - py) ** 2 <= (thickness / 2.0) ** 2
    img[mask] = color


def _hatch(img, xs, ys, mask, rng, base_color):
    # Darker stripes across the shape give it a regular texture.
    angle = rng.uniform(0, np.pi)
    period = rng.integers(5, 10)
    phase = rng.uniform(0, period)
    coord = xs * np.cos(angle) + ys * np.sin(angle)
    stripes = ((coord + phase) % period) < (period / 2.5)
    shade = np.clip(np.asarray(base_color, dtype=float) * 0.55, 0, 255)
    img[mask & stripes] = shade


def _background(rng, size):
    color = rng.integers(170, 256, size=3)
    img = np.ones((size, size, 3), dtype=np.float64) * color
    return img


def _ink_color(rng):
    return rng.integers(0, 90, size=3).astype(float)


def _symbol_color(rng):
    # Saturated hue: one strong channel, the others weak.
    color = rng.integers(0, 80, size=3).astype(float)
    color[rng.integers(0, 3)] = rng.integers(150, 256)
    return color


def _draw_text_band(img, xs, ys, rng, top, bottom):
    """Glyph-like strokes laid out left to right inside a horizontal band."""
    color = _ink_color(rng)
    n_chars = int(rng.integers(4, 9))
    margin = 12
    size = img.shape[1]
    cell_w = (size - 2 * margin) / n_chars
    for c in range(n_chars):
        x0 = margin + c * cell_w + 2
        x1 = margin + (c + 1) * cell_w - 2
        n_strokes = int(rng.integers(2, 5))
        for _ in range(n_strokes):
            ax = rng.uniform(x0, x1)
            ay = rng.uniform(top, bottom)
            bx = rng.uniform(x0, x1)
            by = rng.uniform(top, bottom)
            _stroke(img, xs, ys, (ax, ay), (bx, by), rng.uniform(2.0, 4.0), color)


def _draw_symbol(img, xs, ys, rng, cx, cy, r):
    color = _symbol_color(rng)
    if rng.integers(0, 2) == 0:
        mask = _fill_circle(img, xs, ys, cx, cy, r, color)
    else:
        sides = int(rng.integers(3, 7))
        angle = rng.uniform(0, 2 * np.pi)
        mask = _fill_regular_polygon(img, xs, ys, cx, cy, r, sides, angle, color)
    _hatch(img, xs, ys, mask, rng, color)


def _render(class_name: str, rng, size: int) -> ImageBuffer:
    img = _background(rng, size)
    xs, ys = _grid(size)
    if class_name == "text":
        center = rng.uniform(0.35, 0.65) * size
        half = rng.uniform(0.08, 0.16) * size
        _draw_text_band(img, xs, ys, rng, center - half, center + half)
    elif class_name == "symbol":
        cx = size / 2 + rng.uniform(-0.08, 0.08) * size
        cy = size / 2 + rng.uniform(-0.08, 0.08) * size
        r = rng.uniform(0.22, 0.36) * size
        _draw_symbol(img, xs, ys, rng, cx, cy, r)
    elif class_name == "both":
        cx = size / 2 + rng.uniform(-0.1, 0.1) * size
        cy = size * rng.uniform(0.3, 0.4)
        r = rng.uniform(0.14, 0.22) * size
        _draw_symbol(img, xs, ys, rng, cx, cy, r)
        top = size * rng.uniform(0.68, 0.74)
        bottom = top + rng.uniform(0.1, 0.16) * size
        _draw_text_band(img, xs, ys, rng, top, bottom)
    else:
        raise ValueError(f"unknown synthetic class {class_name!r}")
    return ImageBuffer(np.clip(np.rint(img), 0, 255).astype(np.uint8))


def generate_synthetic(n_per_class: int, seed: int, size: int = 200) -> LabeledCorpus:
    """Deterministic corpus with n_per_class images in each of the 3 classes."""
    if n_per_class < 1:
        raise ValueError("n_per_class must be >= 1")
    rng = np.random.default_rng(seed)
    entries = []
    for label, name in enumerate(CLASS_NAMES):
        for i in range(n_per_class):
            image = _render(name, rng, size)
            entries.append(CorpusEntry(
                label=label,
                ident=f"synthetic:{name}/{i:04d}",
                image=image,
            ))
    return LabeledCorpus(entries=tuple(entries), class_names=CLASS_NAMES)


def write_corpus(corpus: LabeledCorpus, out_dir) -> list[Path]:
    """Write every entry as a PNG under out_dir/<class>/; returns the paths."""
    out_dir = Path(out_dir)
    written = []
    for i, entry in enumerate(corpus.entries):
        cdir = out_dir / corpus.class_names[entry.label]
        cdir.mkdir(parents=True, exist_ok=True)
        path = cdir / f"logo_{i:05d}.png"
        write_image(entry.load(), path)
        written.append(path)
    return written
