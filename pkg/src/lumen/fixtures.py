"""Deterministic synthetic test scenes.

Two families: dark indoor-style scenes (a dim textured field with flat
dark panels and a few bright lamps) and low-contrast mid-tone scenes
(gentle ramps and soft blobs with small dark and bright accents). Scene
content is keyed to the scene name, so corpora are stable across runs
and platforms.
"""

from __future__ import annotations

import math
import zlib
from pathlib import Path

import numpy as np

from .image_io import save_image
from .raster import to_raster

_STANDARD_NAMES = ("lena", "einstein", "couple", "girl", "house", "clock", "peppers")
_CONTRAST_NAMES = tuple(f"scene{i:02d}" for i in range(1, 11))


def _seed(name: str) -> int:
    return zlib.crc32(name.encode("ascii"))


def dark_scene(seed: int, size: int = 256) -> np.ndarray:
    """Dim textured scene with exactly-flat dark panels and bright lamps."""
    if size < 16:
        raise ValueError("scenes need size >= 16")
    rng = np.random.default_rng(seed)
    base = rng.uniform(12.0, 16.0)
    amp = rng.uniform(4.5, 5.5)
    field = base + rng.uniform(-amp, amp, (size, size))
    ramp = np.linspace(-1.0, 1.0, size)
    field += rng.uniform(-3.0, 3.0) * ramp[None, :] + rng.uniform(-3.0, 3.0) * ramp[:, None]
    img = to_raster(field)

    patches = []
    n_patches = int(rng.integers(2, 4))
    per_area = 0.20 * size * size / n_patches
    for _ in range(n_patches):
        aspect = rng.uniform(0.7, 1.4)
        pw = min(int(round(math.sqrt(per_area) * aspect)), size - 4)
        ph = min(int(round(per_area / pw)), size - 4)
        y0 = int(rng.integers(1, size - ph))
        x0 = int(rng.integers(1, size - pw))
        img[y0 : y0 + ph, x0 : x0 + pw] = int(rng.integers(8, 13))
        patches.append((y0, x0, ph, pw))

    field = img.astype(np.float64)
    yy = np.arange(size, dtype=np.float64)[:, None]
    xx = np.arange(size, dtype=np.float64)[None, :]
    wanted = 3
    placed = 0
    attempts = 0
    while placed < wanted and attempts < 200:
        attempts += 1
        radius = min(rng.uniform(11.0, 16.0), size / 2.0 - 4.0)
        reach = radius + 3.0
        cy = rng.uniform(reach, size - reach)
        cx = rng.uniform(reach, size - reach)
        # lamps must not soften the flat panels, so their rims keep clear
        overlaps = any(
            not (cy + reach < y0 or cy - reach > y0 + ph or cx + reach < x0 or cx - reach > x0 + pw)
            for (y0, x0, ph, pw) in patches
        )
        if overlaps:
            continue
        value = rng.uniform(185.0, 215.0)
        dist = np.hypot(yy - cy, xx - cx)
        rim = np.clip((radius + 2.0 - dist) / 2.0, 0.0, 1.0)
        field = rim * value + (1.0 - rim) * field
        placed += 1
    return to_raster(field)


def lowcontrast_scene(seed: int, size: int = 256) -> np.ndarray:
    """Mid-tone scene of gentle ramps and soft blobs with small accents."""
    if size < 16:
        raise ValueError("scenes need size >= 16")
    rng = np.random.default_rng(seed)
    base = rng.uniform(105.0, 135.0)
    field = base + rng.uniform(-7.0, 7.0, (size, size))
    yy = np.arange(size, dtype=np.float64)[:, None] / size
    xx = np.arange(size, dtype=np.float64)[None, :] / size
    field += rng.uniform(8.0, 16.0) * np.sin(2.0 * math.pi * (rng.uniform(0.4, 1.2) * xx + rng.uniform(0.0, 1.0)))
    field += rng.uniform(8.0, 16.0) * np.sin(2.0 * math.pi * (rng.uniform(0.4, 1.2) * yy + rng.uniform(0.0, 1.0)))

    n_blobs = int(rng.integers(3, 6))
    for _ in range(n_blobs):
        cy = rng.uniform(0.0, size)
        cx = rng.uniform(0.0, size)
        sigma = rng.uniform(15.0, 40.0)
        height = rng.uniform(12.0, 32.0) * rng.choice((-1.0, 1.0))
        field += height * np.exp(-((yy * size - cy) ** 2 + (xx * size - cx) ** 2) / (2.0 * sigma * sigma))

    n_accents = int(rng.integers(2, 4))
    for _ in range(n_accents):
        radius = min(rng.uniform(4.0, 7.0), size / 2.0 - 3.0)
        cy = rng.uniform(radius + 2.0, size - radius - 2.0)
        cx = rng.uniform(radius + 2.0, size - radius - 2.0)
        if rng.uniform() < 0.5:
            value = rng.uniform(30.0, 60.0)
        else:
            value = rng.uniform(200.0, 230.0)
        dist = np.hypot(yy * size - cy, xx * size - cx)
        rim = np.clip((radius + 1.0 - dist), 0.0, 1.0)
        field = rim * value + (1.0 - rim) * field
    return to_raster(field)


def standard_corpus(size: int = 256) -> dict[str, np.ndarray]:
    """The seven dark scenes used for brightness and fidelity comparisons."""
    return {name: dark_scene(_seed(name), size) for name in _STANDARD_NAMES}


def contrast_corpus(size: int = 256) -> dict[str, np.ndarray]:
    """The ten mid-tone scenes used for contrast-gain comparisons."""
    return {name: lowcontrast_scene(_seed(name), size) for name in _CONTRAST_NAMES}


def write_corpus(directory, size: int = 256, kind: str = "standard") -> list[Path]:
    """Write a corpus as PGM files and return the paths, sorted by name."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    if kind == "standard":
        corpus = standard_corpus(size)
    elif kind == "contrast":
        corpus = contrast_corpus(size)
    elif kind == "all":
        corpus = {**standard_corpus(size), **contrast_corpus(size)}
    else:
        raise ValueError(f"unknown corpus kind {kind!r}")
    paths = []
    for name in sorted(corpus):
        path = directory / f"{name}.pgm"
        save_image(path, corpus[name])
        paths.append(path)
    return paths
