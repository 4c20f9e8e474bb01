"""Contrast enhancement for unevenly lit 8-bit images.

The public surface: raster primitives, the illumination-based segmentation,
the individual enhancement operators, full pipelines, quality metrics, and
PGM/PNG input and output.
"""

from .clahe import ClaheParams, LayerSet, clahe, multilayer
from .config import AppConfig, default_config, dump_config, load_config, parse_config_text
from .enhancers import (
    AlrsParams,
    EdbiParams,
    EpceParams,
    alrs,
    contrast_map,
    edbi,
    epce,
    epce_transfer,
    unsharp_boost,
)
from .errors import (
    ChannelMismatch,
    ConfigError,
    CorruptFile,
    DegenerateImage,
    DimensionMismatch,
    EmptyMask,
    ImageTooSmall,
    LumenError,
    TileTooLarge,
    UnsupportedFormat,
    ZeroContrastOriginal,
)
from .hvs import EyeParams, Segmentation, background_intensity, eye_params, gradient_field, recombine, segment
from .image_io import load_image, save_image
from .metrics import MetricReport, ambe, cii, psnr
from .mhe import (
    Decomposition,
    ThresholdMatrix,
    auto_class_count,
    class_costs,
    discrepancy,
    mwcvmhe_equalize,
    optimal_thresholds,
    threshold_matrix,
)
from .pipelines import (
    ClaheSettings,
    HvsThresholds,
    MergeParams,
    MheParams,
    Method,
    PipelineConfig,
    PipelineResult,
    enhance_color,
    entropy_weights,
    run_hvs,
    run_hvsedbi,
    run_hvsedge,
    run_mclahefrost,
    run_method,
)
from .raster import (
    GRAY_LEVELS,
    MAX_GRAY,
    Histogram,
    entropy,
    equalize,
    equalize_masked,
    histogram,
    local_mean,
    remap_table,
    to_raster,
)
from .speckle import FrostParams, frost, frost_exponent, median

__version__ = "0.1.0"

__all__ = [
    "AlrsParams",
    "AppConfig",
    "ChannelMismatch",
    "ClaheParams",
    "ClaheSettings",
    "ConfigError",
    "CorruptFile",
    "Decomposition",
    "DegenerateImage",
    "DimensionMismatch",
    "EdbiParams",
    "EmptyMask",
    "EpceParams",
    "EyeParams",
    "FrostParams",
    "GRAY_LEVELS",
    "Histogram",
    "HvsThresholds",
    "ImageTooSmall",
    "LayerSet",
    "LumenError",
    "MAX_GRAY",
    "MergeParams",
    "MetricReport",
    "Method",
    "MheParams",
    "PipelineConfig",
    "PipelineResult",
    "Segmentation",
    "ThresholdMatrix",
    "TileTooLarge",
    "UnsupportedFormat",
    "ZeroContrastOriginal",
    "alrs",
    "ambe",
    "auto_class_count",
    "background_intensity",
    "cii",
    "clahe",
    "class_costs",
    "contrast_map",
    "default_config",
    "discrepancy",
    "dump_config",
    "edbi",
    "enhance_color",
    "entropy",
    "entropy_weights",
    "epce",
    "epce_transfer",
    "equalize",
    "equalize_masked",
    "eye_params",
    "frost",
    "frost_exponent",
    "gradient_field",
    "histogram",
    "load_config",
    "load_image",
    "local_mean",
    "median",
    "multilayer",
    "mwcvmhe_equalize",
    "optimal_thresholds",
    "parse_config_text",
    "psnr",
    "recombine",
    "remap_table",
    "run_hvs",
    "run_hvsedbi",
    "run_hvsedge",
    "run_mclahefrost",
    "run_method",
    "save_image",
    "segment",
    "threshold_matrix",
    "to_raster",
    "unsharp_boost",
]
