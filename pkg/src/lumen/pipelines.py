"""End-to-end enhancement pipelines and their configuration.

Each pipeline takes an 8-bit grayscale raster plus a PipelineConfig and
returns a PipelineResult. Constant images cannot be segmented or usefully
stretched region-by-region, so every pipeline falls back to plain global
equalization for them and says so in the result notes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .clahe import ClaheParams, clahe, multilayer
from .enhancers import AlrsParams, EdbiParams, EpceParams, alrs, edbi, epce
from .errors import ChannelMismatch, DegenerateImage
from .hvs import Segmentation, eye_params, recombine, segment
from .mhe import mwcvmhe_equalize
from .raster import as_raster, entropy, equalize, equalize_masked, to_raster
from .speckle import FrostParams, frost, median


class Method(str, Enum):
    """Every enhancement method the command line and benchmark know."""

    HE = "he"
    CLAHE = "clahe"
    HVS = "hvs"
    HVSEDGE = "hvsedge"
    HVSEDBI = "hvsedbi"
    MCLAHEFROST = "mclahefrost"
    MCLAHEMHE = "mclahemhe"
    MCLAHEEDBI = "mclaheedbi"
    MCLAHEALRS = "mclahealrs"


@dataclass(frozen=True)
class HvsThresholds:
    low_ratio: float = 0.0
    mid_ratio: float = 0.1
    high_ratio: float = 0.0
    gradient_gain: float = -1.5


@dataclass(frozen=True)
class MergeParams:
    """How the three adaptive-equalization layers fold into one image."""

    mode: str = "fixed"
    layer_weights: tuple[float, float, float] = (0.7, 0.2, 0.1)
    original_weight: float = 0.9
    enhanced_weight: float = 0.1

    def __post_init__(self):
        if self.mode not in ("fixed", "entropy"):
            raise ValueError(f"unknown merge mode {self.mode!r}")
        if len(self.layer_weights) != 3 or any(w < 0 for w in self.layer_weights):
            raise ValueError("layer_weights must be three non-negative numbers")
        if abs(sum(self.layer_weights) - 1.0) > 1e-9:
            raise ValueError("layer_weights must sum to 1")
        if self.original_weight < 0 or self.enhanced_weight < 0:
            raise ValueError("blend weights must be non-negative")
        if abs(self.original_weight + self.enhanced_weight - 1.0) > 1e-9:
            raise ValueError("blend weights must sum to 1")


@dataclass(frozen=True)
class MheParams:
    classes: int | None = None
    auto_weight: float = 0.02
    max_classes: int = 8

    def __post_init__(self):
        if self.classes is not None and self.classes < 1:
            raise ValueError("classes must be >= 1")
        if self.auto_weight < 0:
            raise ValueError("auto_weight must be non-negative")
        if not 2 <= self.max_classes <= 64:
            raise ValueError("max_classes must lie in [2, 64]")


@dataclass(frozen=True)
class ClaheSettings:
    clip_limit: float = 2.0
    tile_div: int = 8

    def __post_init__(self):
        if not self.clip_limit > 1.0:
            raise ValueError("clip_limit must exceed 1")
        if self.tile_div < 1:
            raise ValueError("tile_div must be >= 1")


_EPCE_REGIONS = ("dark", "mid", "remainder")


@dataclass(frozen=True)
class PipelineConfig:
    hvs: HvsThresholds = field(default_factory=HvsThresholds)
    epce: EpceParams = field(default_factory=EpceParams)
    edbi: EdbiParams = field(default_factory=EdbiParams)
    clahe: ClaheSettings = field(default_factory=ClaheSettings)
    frost: FrostParams = field(default_factory=FrostParams)
    merge: MergeParams = field(default_factory=MergeParams)
    alrs: AlrsParams = field(default_factory=AlrsParams)
    mhe: MheParams = field(default_factory=MheParams)
    hvsedge_epce_region: str = "dark"

    def __post_init__(self):
        if self.hvsedge_epce_region not in _EPCE_REGIONS:
            raise ValueError(f"hvsedge_epce_region must be one of {_EPCE_REGIONS}")


@dataclass(frozen=True)
class PipelineResult:
    image: np.ndarray
    method: Method
    notes: tuple[str, ...] = ()


_DEGENERATE_NOTE = "degenerate: constant image, fell back to global equalization"


def _degenerate(img: np.ndarray, method: Method) -> PipelineResult:
    return PipelineResult(image=equalize(img), method=method, notes=(_DEGENERATE_NOTE,))


def _segment_with(img: np.ndarray, cfg: PipelineConfig) -> Segmentation:
    params = eye_params(
        img,
        low_ratio=cfg.hvs.low_ratio,
        mid_ratio=cfg.hvs.mid_ratio,
        high_ratio=cfg.hvs.high_ratio,
        gradient_gain=cfg.hvs.gradient_gain,
    )
    return segment(img, params)


def _masked_he_or_none(img: np.ndarray, mask: np.ndarray) -> np.ndarray | None:
    if not mask.any():
        return None
    return equalize_masked(img, mask)


def run_hvs(img: np.ndarray, cfg: PipelineConfig | None = None) -> PipelineResult:
    """Equalize the dark, mid, and bright regions separately in place."""
    img = as_raster(img)
    cfg = cfg or PipelineConfig()
    try:
        seg = _segment_with(img, cfg)
    except DegenerateImage:
        return _degenerate(img, Method.HVS)
    parts = [_masked_he_or_none(img, m) for m in (seg.dark, seg.mid, seg.bright)]
    out = recombine(seg, parts, img)
    return PipelineResult(image=out, method=Method.HVS)


def _compose(original: np.ndarray, assignments) -> np.ndarray:
    out = original.copy()
    for mask, source in assignments:
        if source is None or not mask.any():
            continue
        out[mask] = source[mask]
    return out


def run_hvsedge(img: np.ndarray, cfg: PipelineConfig | None = None) -> PipelineResult:
    """Like run_hvs, but one chosen region goes through the edge-boosting
    exposure transfer instead of equalization. Bright pixels pass through.
    """
    img = as_raster(img)
    cfg = cfg or PipelineConfig()
    try:
        seg = _segment_with(img, cfg)
    except DegenerateImage:
        return _degenerate(img, Method.HVSEDGE)
    regions = {"dark": seg.dark, "mid": seg.mid, "remainder": seg.remainder}
    epce_mask = regions.pop(cfg.hvsedge_epce_region)
    assignments = [(epce_mask, epce(img, cfg.epce) if epce_mask.any() else None)]
    for mask in regions.values():
        assignments.append((mask, _masked_he_or_none(img, mask)))
    out = _compose(img, assignments)
    return PipelineResult(image=out, method=Method.HVSEDGE)


def run_hvsedbi(img: np.ndarray, cfg: PipelineConfig | None = None) -> PipelineResult:
    """Dark region gets the detail booster, mid is equalized, the remainder
    goes through the exposure transfer, bright passes through.
    """
    img = as_raster(img)
    cfg = cfg or PipelineConfig()
    try:
        seg = _segment_with(img, cfg)
    except DegenerateImage:
        return _degenerate(img, Method.HVSEDBI)
    assignments = [
        (seg.dark, edbi(img, cfg.edbi) if seg.dark.any() else None),
        (seg.mid, _masked_he_or_none(img, seg.mid)),
        (seg.remainder, epce(img, cfg.epce) if seg.remainder.any() else None),
    ]
    out = _compose(img, assignments)
    return PipelineResult(image=out, method=Method.HVSEDBI)


def entropy_weights(original: np.ndarray, layers) -> tuple[float, float, float]:
    """Layer weights proportional to each layer's entropy shift from the
    original; equal thirds when no layer shifted at all.
    """
    base = entropy(original)
    shifts = [abs(entropy(layer) - base) for layer in layers]
    total = sum(shifts)
    if total == 0.0:
        return (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)
    return tuple(s / total for s in shifts)


def run_mclahefrost(img: np.ndarray, cfg: PipelineConfig | None = None) -> PipelineResult:
    """Three-scale adaptive equalization, speckle-filtered per layer, merged,
    then lightly median-smoothed.
    """
    img = as_raster(img)
    cfg = cfg or PipelineConfig()
    if int(img.max()) == int(img.min()):
        return _degenerate(img, Method.MCLAHEFROST)
    layers = multilayer(img, cfg.clahe.clip_limit)
    filtered = [frost(layer, cfg.frost) for layer in layers]
    if cfg.merge.mode == "entropy":
        weights = entropy_weights(img, filtered)
    else:
        weights = cfg.merge.layer_weights
    merged = sum(w * f.astype(np.float64) for w, f in zip(weights, filtered))
    base = to_raster(merged)
    smoothed = median(base, 3)
    blended = cfg.merge.original_weight * base.astype(np.float64) + cfg.merge.enhanced_weight * smoothed.astype(np.float64)
    return PipelineResult(image=to_raster(blended), method=Method.MCLAHEFROST)


def _run_variant(method: Method, img: np.ndarray, cfg: PipelineConfig) -> PipelineResult:
    if int(img.max()) == int(img.min()):
        return _degenerate(img, method)
    base = run_mclahefrost(img, cfg)
    notes = base.notes
    if method is Method.MCLAHEMHE:
        out, used = mwcvmhe_equalize(
            base.image,
            classes=cfg.mhe.classes,
            weight=cfg.mhe.auto_weight,
            max_classes=cfg.mhe.max_classes,
        )
        notes = notes + (f"classes={used}",)
    elif method is Method.MCLAHEEDBI:
        out = edbi(base.image, cfg.edbi)
    elif method is Method.MCLAHEALRS:
        out = alrs(base.image, cfg.alrs)
    else:
        raise ValueError(f"not a layered variant: {method}")
    return PipelineResult(image=out, method=method, notes=notes)


def _baseline_clahe(img: np.ndarray, settings: ClaheSettings) -> np.ndarray:
    h, w = img.shape
    params = ClaheParams(
        tile_width=min(w, max(2, w // settings.tile_div)),
        tile_height=min(h, max(2, h // settings.tile_div)),
        clip_limit=settings.clip_limit,
    )
    return clahe(img, params)


def run_method(method: Method | str, img: np.ndarray, cfg: PipelineConfig | None = None) -> PipelineResult:
    """Dispatch one grayscale image through the named method."""
    method = Method(method)
    img = as_raster(img)
    cfg = cfg or PipelineConfig()
    if method is Method.HE:
        return PipelineResult(image=equalize(img), method=method)
    if method is Method.CLAHE:
        return PipelineResult(image=_baseline_clahe(img, cfg.clahe), method=method)
    if method is Method.HVS:
        return run_hvs(img, cfg)
    if method is Method.HVSEDGE:
        return run_hvsedge(img, cfg)
    if method is Method.HVSEDBI:
        return run_hvsedbi(img, cfg)
    if method is Method.MCLAHEFROST:
        if int(img.max()) == int(img.min()):
            return _degenerate(img, method)
        return run_mclahefrost(img, cfg)
    return _run_variant(method, img, cfg)


_CHANNEL_NAMES = ("red", "green", "blue")


def enhance_color(image, method: Method | str, cfg: PipelineConfig | None = None):
    """Run one method over each RGB channel independently.

    Accepts an (h, w, 3) uint8 array or a sequence of three rasters sharing
    one shape. Returns the stacked result and per-channel notes.
    """
    if isinstance(image, np.ndarray) and image.ndim == 3:
        if image.shape[2] != 3:
            raise ChannelMismatch(f"expected 3 channels, got {image.shape[2]}")
        channels = [np.ascontiguousarray(image[:, :, i]) for i in range(3)]
    else:
        channels = [as_raster(c) for c in image]
        if len(channels) != 3:
            raise ChannelMismatch(f"expected 3 channels, got {len(channels)}")
        if len({c.shape for c in channels}) != 1:
            raise ChannelMismatch("channels must share one shape")
    results = [run_method(method, ch, cfg) for ch in channels]
    stacked = np.dstack([r.image for r in results])
    notes = {name: r.notes for name, r in zip(_CHANNEL_NAMES, results)}
    return stacked, notes
