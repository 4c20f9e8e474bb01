"""Contrast-limited adaptive histogram equalization, single and multilayer.

Tiles are laid out by ceiling division, each tile's histogram is clipped
with exact redistribution of the excess, and per-pixel values interpolate
bilinearly between the four surrounding tile mappings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ImageTooSmall, TileTooLarge
from .raster import GRAY_LEVELS, as_raster, remap_table


@dataclass(frozen=True)
class ClaheParams:
    tile_width: int
    tile_height: int
    clip_limit: float = 2.0

    def __post_init__(self):
        if self.tile_width < 2 or self.tile_height < 2:
            raise ValueError("tiles must be at least 2x2")
        if not self.clip_limit > 1.0:
            raise ValueError("clip_limit must exceed 1")


def clip_histogram(bins: np.ndarray, clip_limit: float, n_pixels: int) -> np.ndarray:
    """Clip bins at a ceiling derived from clip_limit, conserving total mass.

    The excess is spread evenly over all 256 bins, and the remainder after
    integer division goes one count each to the lowest bins. An infinite
    clip_limit disables clipping.
    """
    bins = np.asarray(bins, dtype=np.int64)
    if math.isinf(clip_limit):
        return bins.copy()
    ceiling = max(1, int(clip_limit * n_pixels / GRAY_LEVELS))
    clipped = np.minimum(bins, ceiling)
    excess = int(bins.sum() - clipped.sum())
    if excess == 0:
        return clipped
    clipped += excess // GRAY_LEVELS
    clipped[: excess % GRAY_LEVELS] += 1
    return clipped


def _tile_edges(length: int, size: int) -> np.ndarray:
    """Tile boundary offsets covering [0, length] with the last tile shorter."""
    count = math.ceil(length / size)
    edges = np.minimum(np.arange(count + 1) * size, length)
    return edges


def clahe(img: np.ndarray, params: ClaheParams) -> np.ndarray:
    """Clip-limited adaptive equalization with bilinear tile interpolation.

    With a single tile covering the whole image and an infinite clip limit
    this reduces exactly to global equalization.
    """
    img = as_raster(img)
    h, w = img.shape
    if params.tile_height > h or params.tile_width > w:
        raise TileTooLarge(
            f"tile {params.tile_height}x{params.tile_width} exceeds image {h}x{w}"
        )
    y_edges = _tile_edges(h, params.tile_height)
    x_edges = _tile_edges(w, params.tile_width)
    ny = len(y_edges) - 1
    nx = len(x_edges) - 1

    maps = np.empty((ny, nx, GRAY_LEVELS), dtype=np.uint8)
    y_centers = np.empty(ny)
    x_centers = np.empty(nx)
    for iy in range(ny):
        y0, y1 = int(y_edges[iy]), int(y_edges[iy + 1])
        y_centers[iy] = (y0 + y1 - 1) / 2.0
        for ix in range(nx):
            x0, x1 = int(x_edges[ix]), int(x_edges[ix + 1])
            if iy == 0:
                x_centers[ix] = (x0 + x1 - 1) / 2.0
            tile = img[y0:y1, x0:x1]
            bins = np.bincount(tile.ravel(), minlength=GRAY_LEVELS).astype(np.int64)
            bins = clip_histogram(bins, params.clip_limit, tile.size)
            maps[iy, ix] = remap_table(bins, tile.size)

    rows = np.arange(h, dtype=np.float64)
    cols = np.arange(w, dtype=np.float64)
    iy_hi = np.clip(np.searchsorted(y_centers, rows), 0, ny - 1)
    iy_lo = np.clip(iy_hi - 1, 0, ny - 1)
    ix_hi = np.clip(np.searchsorted(x_centers, cols), 0, nx - 1)
    ix_lo = np.clip(ix_hi - 1, 0, nx - 1)

    with np.errstate(divide="ignore", invalid="ignore"):
        wy = (rows - y_centers[iy_lo]) / (y_centers[iy_hi] - y_centers[iy_lo])
        wx = (cols - x_centers[ix_lo]) / (x_centers[ix_hi] - x_centers[ix_lo])
    wy = np.clip(np.nan_to_num(wy, nan=0.0), 0.0, 1.0)[:, None]
    wx = np.clip(np.nan_to_num(wx, nan=0.0), 0.0, 1.0)[None, :]

    row_lo = iy_lo[:, None]
    row_hi = iy_hi[:, None]
    col_lo = ix_lo[None, :]
    col_hi = ix_hi[None, :]
    v00 = maps[row_lo, col_lo, img].astype(np.float64)
    v01 = maps[row_lo, col_hi, img].astype(np.float64)
    v10 = maps[row_hi, col_lo, img].astype(np.float64)
    v11 = maps[row_hi, col_hi, img].astype(np.float64)
    top = v00 * (1.0 - wx) + v01 * wx
    bottom = v10 * (1.0 - wx) + v11 * wx
    blended = top * (1.0 - wy) + bottom * wy
    from .raster import to_raster

    return to_raster(blended)


@dataclass(frozen=True)
class LayerSet:
    """Coarse, medium, and fine adaptive-equalization passes of one image."""

    coarse: np.ndarray
    medium: np.ndarray
    fine: np.ndarray

    def __iter__(self):
        return iter((self.coarse, self.medium, self.fine))


_LAYER_DIVISIONS = (2, 4, 8)
_MIN_SIDE = 16


def multilayer(img: np.ndarray, clip_limit: float = 2.0) -> LayerSet:
    """Run clahe at three tile scales (1/2, 1/4, 1/8 of each dimension)."""
    img = as_raster(img)
    h, w = img.shape
    if h < _MIN_SIDE or w < _MIN_SIDE:
        raise ImageTooSmall(f"need at least {_MIN_SIDE}x{_MIN_SIDE}, got {h}x{w}")
    layers = []
    for div in _LAYER_DIVISIONS:
        params = ClaheParams(
            tile_width=max(2, w // div),
            tile_height=max(2, h // div),
            clip_limit=clip_limit,
        )
        layers.append(clahe(img, params))
    return LayerSet(coarse=layers[0], medium=layers[1], fine=layers[2])
