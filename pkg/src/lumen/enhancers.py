"""Pointwise and kernel-based enhancement operators.

Three families live here: an exposure-driven sigmoid transfer with edge
boosting (epce), an unsharp-masking detail booster with a sigmoid contrast
map (edbi), and an adaptive per-band blend of local equalization with the
original (alrs).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .raster import MAX_GRAY, as_raster, convolve3x3, local_mean, mean_level, to_raster

_BLUR = np.array([[1, 2, 1], [2, 4, 2], [1, 2, 1]], dtype=np.float64) / 16.0
_HIGHPASS = np.array([[0, -1, 0], [-1, 5, -1], [0, -1, 0]], dtype=np.float64)
_SOBEL_X = np.array([[-1, 0, 1], [-2, 0, 2], [-1, 0, 1]], dtype=np.float64)
_SOBEL_Y = np.array([[-1, -2, -1], [0, 0, 0], [1, 2, 1]], dtype=np.float64)


@dataclass(frozen=True)
class EpceParams:
    gain: float = 40.0
    highpass_exp: float = 1.0
    edge_exp: float = 1.0
    cutoff: float = 240.0
    range_max: float = 255.0

    def __post_init__(self):
        if self.range_max <= 0:
            raise ValueError("range_max must be positive")
        if not 0 <= self.cutoff <= self.range_max:
            raise ValueError("cutoff must lie in [0, range_max]")


def epce_transfer(img, cutoff: float = 240.0, range_max: float = 255.0) -> np.ndarray:
    """Sigmoid exposure transfer into (-1, 0].

    The slope at each pixel follows its 3x3 neighborhood mean: pixels in
    brighter neighborhoods get a slope closer to range_max. Where the slope
    is zero the transfer is defined to be zero.
    """
    field = np.asarray(img, dtype=np.float64)
    mean = local_mean(field, radius=1)
    slope = cutoff + (range_max - cutoff) * (mean / range_max)
    out = np.zeros_like(field)
    nonzero = slope != 0.0
    with np.errstate(over="ignore"):
        out[nonzero] = -np.tanh(field[nonzero] / slope[nonzero])
    return out


def _signed_power(field: np.ndarray, exponent: float) -> np.ndarray:
    """|x|^exponent with the sign of x carried through."""
    return np.sign(field) * np.abs(field) ** exponent


def epce(img: np.ndarray, params: EpceParams | None = None) -> np.ndarray:
    """Exposure transfer plus edge-weighted high-pass detail, rescaled."""
    img = as_raster(img)
    if params is None:
        params = EpceParams()
    transfer = epce_transfer(img, params.cutoff, params.range_max)
    highpassed = convolve3x3(transfer, _HIGHPASS)
    gx = convolve3x3(transfer, _SOBEL_X)
    gy = convolve3x3(transfer, _SOBEL_Y)
    edges = np.hypot(gx, gy)
    peak = edges.max()
    if peak > 0:
        edges = edges / peak
    detail = _signed_power(edges, params.edge_exp) * _signed_power(highpassed, params.highpass_exp)
    return to_raster(params.gain * (transfer + detail))


@dataclass(frozen=True)
class EdbiParams:
    boost: float = 0.5
    contrast: float = 0.5
    threshold: float | None = None

    def __post_init__(self):
        if self.contrast < 0:
            raise ValueError("contrast must be non-negative")


def unsharp_boost(img: np.ndarray, boost: float = 0.5) -> np.ndarray:
    """High-frequency residual plus a scaled copy of the image, unclamped.

    Values of ``boost`` outside [0.2, 0.7] tend to over- or under-shoot,
    so they get a warning but still run.
    """
    img = as_raster(img)
    if not 0.2 <= boost <= 0.7:
        warnings.warn(f"boost {boost} outside the recommended [0.2, 0.7]", stacklevel=2)
    field = img.astype(np.float64)
    blurred = convolve3x3(field, _BLUR)
    return (field - blurred) + boost * field


def contrast_map(field, contrast: float = 0.5, threshold: float | None = None) -> np.ndarray:
    """Sigmoid-weighted lift of values below ``threshold``; others pass through.

    The input field is clamped into [0, 255] first. ``threshold`` defaults
    to the clamped field's mean.
    """
    field = np.clip(np.asarray(field, dtype=np.float64), 0.0, float(MAX_GRAY))
    if threshold is None:
        threshold = float(field.mean())
    lifted = field + field * contrast / (1.0 + np.exp(-field))
    return np.where(field < threshold, lifted, field)


def edbi(img: np.ndarray, params: EdbiParams | None = None) -> np.ndarray:
    """Detail boost followed by the below-threshold contrast lift."""
    img = as_raster(img)
    if params is None:
        params = EdbiParams()
    boosted = unsharp_boost(img, params.boost)
    threshold = params.threshold
    if threshold is None:
        threshold = mean_level(img)
    return to_raster(contrast_map(boosted, params.contrast, threshold))


@dataclass(frozen=True)
class AlrsParams:
    level: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.level <= 1.0:
            raise ValueError("level must lie in [0, 1]")


_ALRS_BANDS = ((0, 85), (86, 170), (171, 255))


def alrs(img: np.ndarray, params: AlrsParams | None = None) -> np.ndarray:
    """Blend per-band equalization with the original, weighted by band spread.

    Each of the three gray bands is equalized over its own pixels, and the
    blend weight shrinks as the band's mean absolute deviation approaches
    half its width. level=0 returns the image unchanged.
    """
    from .raster import equalize_masked

    img = as_raster(img)
    if params is None:
        params = AlrsParams()
    if params.level == 0.0:
        return img.copy()
    field = img.astype(np.float64)
    out = field.copy()
    for lo, hi in _ALRS_BANDS:
        mask = (img >= lo) & (img <= hi)
        if not mask.any():
            continue
        values = field[mask]
        spread = float(np.abs(values - values.mean()).mean())
        half_width = (hi - lo) / 2.0
        weight = params.level * max(0.0, 1.0 - spread / half_width)
        equalized = equalize_masked(img, mask)
        out[mask] = weight * equalized[mask].astype(np.float64) + (1.0 - weight) * values
    return to_raster(out)
