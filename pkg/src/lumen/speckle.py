"""Edge-preserving noise filters: adaptive Frost smoothing and median."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import as_raster, to_raster


@dataclass(frozen=True)
class FrostParams:
    size: int = 3
    damping: float = 1.0

    def __post_init__(self):
        if self.size < 3 or self.size % 2 == 0:
            raise ValueError("size must be an odd integer >= 3")
        if not self.damping > 0:
            raise ValueError("damping must be positive")


def frost_exponent(local_var, local_mean, cov_sq: float, size: int, damping: float):
    """Decay rate of the Frost kernel at each window.

    Scales the window's variation coefficient against the image-wide one;
    flat or non-positive-mean windows decay at rate zero (pure averaging).
    """
    local_var = np.asarray(local_var, dtype=np.float64)
    local_mean = np.asarray(local_mean, dtype=np.float64)
    usable = (local_mean > 0) & (local_var > 0)
    safe_mean = np.where(usable, local_mean, 1.0)
    ratio = np.where(usable, local_var / (safe_mean * safe_mean), 0.0)
    if cov_sq <= 0:
        return np.zeros_like(ratio)
    return (4.0 / (size * cov_sq)) * ratio * damping


def frost(img: np.ndarray, params: FrostParams | None = None) -> np.ndarray:
    """Exponentially weighted window mean; weights decay with distance
    faster wherever the window is busier relative to the whole image.
    """
    img = as_raster(img)
    if params is None:
        params = FrostParams()
    size = params.size
    field = img.astype(np.float64)
    gmean = field.mean()
    gstd = field.std()
    if gstd == 0.0:
        return img.copy()
    cov_sq = (gstd / gmean) ** 2 if gmean > 0 else 0.0

    pad = size // 2
    padded = np.pad(field, pad, mode="edge")
    windows = np.lib.stride_tricks.sliding_window_view(padded, (size, size))
    lmean = windows.mean(axis=(2, 3))
    lvar = windows.var(axis=(2, 3))
    alpha = frost_exponent(lvar, lmean, cov_sq, size, params.damping)

    offsets = np.arange(size) - pad
    dist = np.abs(offsets)[:, None] + np.abs(offsets)[None, :]
    weights = np.exp(-alpha[:, :, None, None] * dist[None, None, :, :])
    weight_sum = weights.sum(axis=(2, 3))
    smoothed = (windows * weights).sum(axis=(2, 3)) / weight_sum
    smoothed = np.where(lmean > 0, smoothed, field)
    return to_raster(smoothed)


def median(img: np.ndarray, size: int = 3) -> np.ndarray:
    """Window median with edge replication; odd sizes give exact uint8."""
    img = as_raster(img)
    if size < 3 or size % 2 == 0:
        raise ValueError("size must be an odd integer >= 3")
    pad = size // 2
    padded = np.pad(img, pad, mode="edge")
    windows = np.lib.stride_tricks.sliding_window_view(padded, (size, size))
    return np.median(windows, axis=(2, 3)).astype(np.uint8)
