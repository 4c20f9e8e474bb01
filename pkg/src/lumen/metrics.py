"""Image quality metrics: PSNR, mean-brightness error, contrast improvement."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, ZeroContrastOriginal
from .raster import MAX_GRAY, as_raster


def _pair(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = as_raster(a)
    b = as_raster(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return a, b


def psnr(original: np.ndarray, produced: np.ndarray) -> float:
    """Peak signal-to-noise ratio in dB; identical images give inf."""
    a, b = _pair(original, produced)
    diff = a.astype(np.float64) - b.astype(np.float64)
    mse = float(np.mean(diff * diff))
    if mse == 0.0:
        return float("inf")
    return 10.0 * math.log10(MAX_GRAY * MAX_GRAY / mse)


def ambe(original: np.ndarray, produced: np.ndarray) -> float:
    """Absolute difference of the two mean gray levels, computed exactly."""
    a, b = _pair(original, produced)
    sum_a = int(a.sum(dtype=np.int64))
    sum_b = int(b.sum(dtype=np.int64))
    return abs(sum_a - sum_b) / a.size


def _window_contrast(img: np.ndarray, stride: int) -> float | None:
    """Mean Michelson contrast over 3x3 windows sampled at ``stride``.

    Windows whose max+min is zero carry no contrast information and are
    skipped. Returns None when every window was skipped.
    """
    windows = np.lib.stride_tricks.sliding_window_view(img, (3, 3))
    windows = windows[::stride, ::stride]
    wmax = windows.max(axis=(2, 3)).astype(np.float64)
    wmin = windows.min(axis=(2, 3)).astype(np.float64)
    denom = wmax + wmin
    usable = denom > 0
    if not usable.any():
        return None
    return float(((wmax[usable] - wmin[usable]) / denom[usable]).mean())


def cii(original: np.ndarray, produced: np.ndarray, stride: int = 1) -> float:
    """Ratio of mean local contrast after enhancement to before.

    Raises ZeroContrastOriginal when the reference contrast is zero or
    undefined, since the ratio would be meaningless.
    """
    a, b = _pair(original, produced)
    if stride < 1:
        raise ValueError("stride must be >= 1")
    if a.shape[0] < 3 or a.shape[1] < 3:
        raise DimensionMismatch("images must be at least 3x3 for local contrast")
    ref = _window_contrast(a, stride)
    if ref is None or ref == 0.0:
        raise ZeroContrastOriginal("reference image has no local contrast")
    out = _window_contrast(b, stride)
    if out is None:
        return 0.0
    return out / ref


@dataclass(frozen=True)
class MetricReport:
    """One image/method pair's scores. ``cii`` is None when undefined."""

    psnr: float
    ambe: float
    cii: float | None
    method: str = ""
    image_id: str = ""
