"""Core 8-bit raster operations: histograms, equalization, local statistics.

A "raster" throughout this package is a 2-D uint8 array. Intermediate
computations use float64 fields and come back to uint8 through
:func:`to_raster`, which rounds halves up before clipping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyMask

GRAY_LEVELS = 256
MAX_GRAY = 255


def as_raster(data) -> np.ndarray:
    """Validate ``data`` as a 2-D uint8 image and return it as an ndarray."""
    arr = np.asarray(data)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        raise ValueError(f"expected uint8 pixels, got {arr.dtype}")
    if arr.size == 0:
        raise ValueError("expected a non-empty image")
    return arr


def round_half_up(values):
    """Round to nearest integer with .5 going up, elementwise."""
    return np.floor(np.asarray(values, dtype=np.float64) + 0.5)


def to_raster(field) -> np.ndarray:
    """Round a float field half-up and clip it into [0, 255] uint8."""
    return np.clip(round_half_up(field), 0, MAX_GRAY).astype(np.uint8)


@dataclass(frozen=True)
class Histogram:
    """Level counts for an 8-bit image (or a masked subset of one)."""

    bins: np.ndarray
    total: int

    def __post_init__(self):
        bins = np.asarray(self.bins, dtype=np.int64)
        if bins.shape != (GRAY_LEVELS,):
            raise ValueError(f"expected {GRAY_LEVELS} bins, got shape {bins.shape}")
        object.__setattr__(self, "bins", bins)
        object.__setattr__(self, "total", int(self.total))

    @classmethod
    def of(cls, img: np.ndarray) -> "Histogram":
        img = as_raster(img)
        bins = np.bincount(img.ravel(), minlength=GRAY_LEVELS).astype(np.int64)
        return cls(bins=bins, total=img.size)

    def probabilities(self) -> np.ndarray:
        if self.total == 0:
            return np.zeros(GRAY_LEVELS, dtype=np.float64)
        return self.bins / float(self.total)


def histogram(img: np.ndarray) -> Histogram:
    return Histogram.of(img)


def remap_table(bins: np.ndarray, total: int, lo: int = 0, hi: int = MAX_GRAY) -> np.ndarray:
    """Equalization lookup table mapping each level onto [lo, hi].

    Uses exact integer arithmetic: level v maps to
    ``lo + round_half_up(span * cdf(v))`` where span = hi - lo.
    """
    if not 0 <= lo <= hi <= MAX_GRAY:
        raise ValueError(f"invalid target range [{lo}, {hi}]")
    bins = np.asarray(bins, dtype=np.int64)
    total = int(total)
    if total <= 0:
        raise ValueError("histogram has no mass")
    cum = np.cumsum(bins)
    span = hi - lo
    # floor((2*span*cum + total) / (2*total)) == round_half_up(span*cum/total)
    table = lo + (2 * span * cum + total) // (2 * total)
    return table.astype(np.uint8)


def equalize(img: np.ndarray) -> np.ndarray:
    """Global histogram equalization onto the full [0, 255] range."""
    img = as_raster(img)
    hist = Histogram.of(img)
    table = remap_table(hist.bins, hist.total)
    return table[img]


def equalize_masked(img: np.ndarray, mask: np.ndarray, lo: int = 0, hi: int = MAX_GRAY) -> np.ndarray:
    """Equalize only the pixels selected by ``mask``, leaving the rest alone.

    The CDF is computed from masked pixels only; masked pixels are remapped
    onto [lo, hi] and unmasked pixels are returned unchanged.
    """
    img = as_raster(img)
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != img.shape:
        raise ValueError(f"mask shape {mask.shape} != image shape {img.shape}")
    count = int(mask.sum())
    if count == 0:
        raise EmptyMask("mask selects no pixels")
    bins = np.bincount(img[mask], minlength=GRAY_LEVELS).astype(np.int64)
    table = remap_table(bins, count, lo, hi)
    out = img.copy()
    out[mask] = table[img[mask]]
    return out


def entropy(source) -> float:
    """Shannon entropy in base-10 digits of the level distribution."""
    if isinstance(source, Histogram):
        probs = source.probabilities()
    else:
        probs = Histogram.of(source).probabilities()
    probs = probs[probs > 0]
    if probs.size == 0:
        return 0.0
    return float(-np.sum(probs * np.log10(probs)))


def local_mean(img, radius: int = 1) -> np.ndarray:
    """Mean over a (2*radius+1)^2 window with edge replication, as float64."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    field = np.asarray(img, dtype=np.float64)
    if field.ndim != 2:
        raise ValueError(f"expected a 2-D field, got shape {field.shape}")
    padded = np.pad(field, radius, mode="edge")
    windows = np.lib.stride_tricks.sliding_window_view(padded, (2 * radius + 1, 2 * radius + 1))
    return windows.mean(axis=(2, 3))


def convolve3x3(img, kernel) -> np.ndarray:
    """Correlate with a 3x3 kernel under replicate padding, as float64."""
    kernel = np.asarray(kernel, dtype=np.float64)
    if kernel.shape != (3, 3):
        raise ValueError(f"expected a 3x3 kernel, got shape {kernel.shape}")
    field = np.asarray(img, dtype=np.float64)
    if field.ndim != 2:
        raise ValueError(f"expected a 2-D field, got shape {field.shape}")
    padded = np.pad(field, 1, mode="edge")
    windows = np.lib.stride_tricks.sliding_window_view(padded, (3, 3))
    return np.einsum("ijkl,kl->ij", windows, kernel)


def mean_level(img: np.ndarray) -> float:
    """Arithmetic mean gray level as an exact ratio of integers."""
    img = as_raster(img)
    return int(img.sum(dtype=np.int64)) / img.size


def gray_span(img: np.ndarray) -> int:
    """max - min gray level."""
    img = as_raster(img)
    return int(img.max()) - int(img.min())


def shannon_bits(hist: Histogram) -> float:
    """Shannon entropy in bits; used for class-count selection."""
    probs = hist.probabilities()
    probs = probs[probs > 0]
    if probs.size == 0:
        return 0.0
    return float(-np.sum(probs * np.log2(probs)))
