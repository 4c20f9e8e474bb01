"""Minimum within-class variance multi-histogram equalization.

The gray axis is split into k contiguous classes by dynamic programming
over a within-class variance cost, then each class is equalized onto its
own gray range. The class count can be fixed or chosen automatically by
trading discrepancy from the original against the entropy cost of more
classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .raster import GRAY_LEVELS, MAX_GRAY, Histogram, as_raster, remap_table


def discrepancy(hist: Histogram, lo: int, hi: int) -> float:
    """Squared deviation of levels in [lo, hi] from the range's own mean,
    weighted by the whole-image level probabilities."""
    if not 0 <= lo <= hi <= MAX_GRAY:
        raise ValueError(f"invalid level range [{lo}, {hi}]")
    bins = hist.bins[lo : hi + 1].astype(np.float64)
    mass = bins.sum()
    if mass == 0 or hist.total == 0:
        return 0.0
    levels = np.arange(lo, hi + 1, dtype=np.float64)
    mean = (bins * levels).sum() / mass
    return float((bins * (levels - mean) ** 2).sum() / hist.total)


def _phi_matrix(hist: Histogram) -> np.ndarray:
    """phi[p, q]: within-class variance mass of levels p..q, inf below the
    diagonal, 0 where the range holds no pixels."""
    counts = hist.bins.astype(np.float64)
    levels = np.arange(GRAY_LEVELS, dtype=np.float64)
    c0 = np.concatenate(([0.0], np.cumsum(counts)))
    c1 = np.concatenate(([0.0], np.cumsum(counts * levels)))
    c2 = np.concatenate(([0.0], np.cumsum(counts * levels * levels)))
    p = np.arange(GRAY_LEVELS)[:, None]
    q = np.arange(GRAY_LEVELS)[None, :]
    m0 = c0[q + 1] - c0[p]
    m1 = c1[q + 1] - c1[p]
    m2 = c2[q + 1] - c2[p]
    with np.errstate(divide="ignore", invalid="ignore"):
        phi = m2 - (m1 * m1) / m0
    phi = np.where(m0 > 0, phi, 0.0)
    phi = np.maximum(phi, 0.0)
    phi[q < p] = np.inf
    return phi


@dataclass(frozen=True)
class ThresholdMatrix:
    """DP tables: cost[k][q] is the best k-class cost of levels 0..q, and
    backptr[k][q] the last threshold achieving it."""

    cost: np.ndarray
    backptr: np.ndarray
    max_classes: int


def threshold_matrix(hist: Histogram, max_classes: int = 8) -> ThresholdMatrix:
    if not 2 <= max_classes <= 64:
        raise ValueError("max_classes must lie in [2, 64]")
    phi = _phi_matrix(hist)
    n = GRAY_LEVELS
    cost = np.full((max_classes + 1, n), np.inf)
    backptr = np.full((max_classes + 1, n), -1, dtype=np.int32)
    cost[1] = phi[0]
    for k in range(2, max_classes + 1):
        # cand[l, q] = cost of ending class k-1 at level l, class k on l+1..q
        cand = cost[k - 1][: n - 1, None] + phi[1:, :]
        best = np.argmin(cand, axis=0)
        cost[k] = cand[best, np.arange(n)]
        backptr[k] = best
    return ThresholdMatrix(cost=cost, backptr=backptr, max_classes=max_classes)


@dataclass(frozen=True)
class Decomposition:
    """A k-class split of the gray axis into contiguous level ranges."""

    classes: int
    thresholds: tuple[int, ...]
    bounds: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.thresholds) != self.classes - 1:
            raise ValueError("need classes-1 thresholds")
        prev = -1
        for t in self.thresholds:
            if not prev < t <= MAX_GRAY - 1:
                raise ValueError("thresholds must ascend within [0, 254]")
            prev = t


def optimal_thresholds(tm: ThresholdMatrix, classes: int) -> Decomposition:
    """Back-trace the DP tables for the best split into ``classes`` ranges.

    Class j covers levels [t_{j-1}+1, t_j], with class 1 starting at 0 and
    the last class ending at 255.
    """
    if not 1 <= classes <= tm.max_classes:
        raise ValueError(f"classes must lie in [1, {tm.max_classes}]")
    thresholds = []
    q = GRAY_LEVELS - 1
    for k in range(classes, 1, -1):
        t = int(tm.backptr[k][q])
        thresholds.append(t)
        q = t
    thresholds.reverse()
    bounds = []
    lo = 0
    for t in thresholds:
        bounds.append((lo, t))
        lo = t + 1
    bounds.append((lo, MAX_GRAY))
    return Decomposition(classes=classes, thresholds=tuple(thresholds), bounds=tuple(bounds))


def class_costs(tm: ThresholdMatrix) -> np.ndarray:
    """Best total within-class cost at the full range, per class count."""
    return tm.cost[1:, GRAY_LEVELS - 1].copy()


def _auto_count(hist: Histogram, tm: ThresholdMatrix, weight: float, max_classes: int) -> int:
    # the summed per-class discrepancy equals the DP cost over the full
    # range divided by the pixel count
    total = float(hist.total)
    best_k = 1
    best_score = math.inf
    for k in range(1, max_classes + 1):
        disc = float(tm.cost[k, GRAY_LEVELS - 1]) / total
        score = weight * disc + math.log2(k)
        if score < best_score - 1e-12:
            best_score = score
            best_k = k
    return best_k


def auto_class_count(hist: Histogram, weight: float = 0.02, max_classes: int = 8) -> int:
    """Pick the class count minimizing weight*discrepancy + log2(k)."""
    if weight < 0:
        raise ValueError("weight must be non-negative")
    tm = threshold_matrix(hist, max_classes=max(2, max_classes))
    return _auto_count(hist, tm, weight, max_classes)


def mwcvmhe_equalize(
    img: np.ndarray,
    classes: int | None = None,
    *,
    weight: float = 0.02,
    max_classes: int = 8,
) -> tuple[np.ndarray, int]:
    """Split the histogram into classes and equalize each onto its own range.

    ``classes=None`` selects the count automatically. Returns the enhanced
    image and the class count used.
    """
    img = as_raster(img)
    hist = Histogram.of(img)
    tm = threshold_matrix(hist, max_classes=max(2, max_classes, classes or 2))
    if classes is None:
        classes = _auto_count(hist, tm, weight, max_classes)
    if classes == 1:
        table = remap_table(hist.bins, hist.total)
        return table[img], 1
    decomp = optimal_thresholds(tm, classes)
    table = np.arange(GRAY_LEVELS, dtype=np.uint8)
    for lo, hi in decomp.bounds:
        counts = hist.bins[lo : hi + 1]
        mass = int(counts.sum())
        if mass == 0:
            continue
        sub = remap_table(counts, mass, 0, hi - lo)
        table[lo : hi + 1] = lo + sub.astype(np.int64)
    return table[img], classes
