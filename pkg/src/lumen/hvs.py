"""Illumination-based segmentation modeled on human brightness perception.

An image is split into four disjoint regions (dark, mid, bright, remainder)
by comparing a local gradient field against thresholds derived from the
local background intensity. Each region can then be enhanced independently
and recombined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateImage
from .raster import as_raster

_SQRT2 = math.sqrt(2.0)


def background_intensity(img) -> np.ndarray:
    """Perceived background: mean of the pixel and its neighbor averages.

    Axis neighbors are weighted 1 and diagonal neighbors 1/sqrt(2), the two
    averages are themselves averaged, and the result is averaged with the
    pixel. Edges replicate.
    """
    field = np.asarray(img, dtype=np.float64)
    if field.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {field.shape}")
    p = np.pad(field, 1, mode="edge")
    axis_sum = p[:-2, 1:-1] + p[2:, 1:-1] + p[1:-1, :-2] + p[1:-1, 2:]
    diag_sum = p[:-2, :-2] + p[:-2, 2:] + p[2:, :-2] + p[2:, 2:]
    neighbor = 0.5 * (axis_sum / 4.0 + diag_sum / (4.0 * _SQRT2))
    return (neighbor + field) / 2.0


def gradient_field(img) -> np.ndarray:
    """Mean absolute forward difference to the right and down neighbors.

    The last column and row replicate, so their forward difference in that
    direction vanishes.
    """
    field = np.asarray(img, dtype=np.float64)
    if field.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {field.shape}")
    right = np.empty_like(field)
    right[:, :-1] = np.abs(field[:, :-1] - field[:, 1:])
    right[:, -1] = 0.0
    down = np.empty_like(field)
    down[:-1, :] = np.abs(field[:-1, :] - field[1:, :])
    down[-1, :] = 0.0
    return (right + down) / 2.0


@dataclass(frozen=True)
class EyeParams:
    """Thresholds separating the perceptual response regions of one image."""

    gray_span: float
    bg_low: float
    bg_mid: float
    bg_high: float
    grad_base: float
    grad_dark: float
    grad_bright: float | None
    low_ratio: float
    mid_ratio: float
    high_ratio: float
    gradient_gain: float


def eye_params(
    img: np.ndarray,
    low_ratio: float = 0.0,
    mid_ratio: float = 0.1,
    high_ratio: float = 0.0,
    gradient_gain: float = -1.5,
) -> EyeParams:
    """Derive segmentation thresholds from the image's own statistics.

    Raises DegenerateImage when the image is constant, because every
    threshold collapses to zero and no region can be told apart.
    """
    img = as_raster(img)
    span = float(int(img.max()) - int(img.min()))
    if span == 0.0:
        raise DegenerateImage("constant image has no gray-level span")
    bg = background_intensity(img)
    grad = gradient_field(img)
    positive = bg > 0
    ratios = np.zeros_like(grad)
    np.divide(grad, bg, out=ratios, where=positive)
    grad_base = (abs(gradient_gain) / 100.0) * float(ratios.max())
    bg_low = low_ratio * span
    bg_mid = mid_ratio * span
    bg_high = high_ratio * span
    grad_dark = grad_base * math.sqrt(bg_mid)
    grad_bright = grad_base / bg_high if bg_high > 0 else None
    return EyeParams(
        gray_span=span,
        bg_low=bg_low,
        bg_mid=bg_mid,
        bg_high=bg_high,
        grad_base=grad_base,
        grad_dark=grad_dark,
        grad_bright=grad_bright,
        low_ratio=low_ratio,
        mid_ratio=mid_ratio,
        high_ratio=high_ratio,
        gradient_gain=gradient_gain,
    )


@dataclass(frozen=True)
class Segmentation:
    """Disjoint boolean masks covering the image exactly once each."""

    dark: np.ndarray
    mid: np.ndarray
    bright: np.ndarray
    remainder: np.ndarray

    def __post_init__(self):
        shape = self.dark.shape
        for name in ("mid", "bright", "remainder"):
            if getattr(self, name).shape != shape:
                raise ValueError("segmentation masks must share one shape")
        coverage = (
            self.dark.astype(np.int8)
            + self.mid.astype(np.int8)
            + self.bright.astype(np.int8)
            + self.remainder.astype(np.int8)
        )
        if not (coverage == 1).all():
            raise ValueError("segmentation masks must partition the image")

    @property
    def masks(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return (self.dark, self.mid, self.bright, self.remainder)


def segment(img: np.ndarray, params: EyeParams | None = None) -> Segmentation:
    """Assign each pixel to dark, mid, bright, or remainder.

    Matching is first-wins in that order. Pixels with non-positive
    background fail every ratio test and land in the remainder.
    """
    img = as_raster(img)
    if params is None:
        params = eye_params(img)
    bg = background_intensity(img)
    grad = gradient_field(img)
    positive = bg > 0
    safe_bg = np.where(positive, bg, 1.0)
    ratio = grad / safe_bg

    dark = positive & (bg <= params.bg_mid) & (bg >= params.bg_low) & (ratio > params.grad_dark)
    taken = dark
    mid = (
        positive
        & ~taken
        & (bg > params.bg_mid)
        & (bg <= params.bg_high)
        & (ratio > params.grad_base)
    )
    taken = taken | mid
    if params.grad_bright is None:
        bright = np.zeros_like(dark)
    else:
        bright = positive & ~taken & (bg > params.bg_high) & (ratio > params.grad_bright)
    taken = taken | bright
    remainder = ~taken
    return Segmentation(dark=dark, mid=mid, bright=bright, remainder=remainder)


def recombine(seg: Segmentation, parts, original: np.ndarray) -> np.ndarray:
    """Paste three enhanced regions (dark, mid, bright) over the original.

    ``parts`` entries may be None to keep the original pixels in that region.
    Remainder pixels always come from ``original``.
    """
    original = as_raster(original)
    if len(parts) != 3:
        raise ValueError("expected parts for (dark, mid, bright)")
    out = original.copy()
    for mask, part in zip((seg.dark, seg.mid, seg.bright), parts):
        if part is None:
            continue
        part = as_raster(part)
        if part.shape != original.shape:
            raise ValueError("part shape must match the original image")
        out[mask] = part[mask]
    return out
