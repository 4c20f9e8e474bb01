"""Flat text configuration: one ``section.key = value`` pair per line.

Blank lines are ignored and ``#`` starts a comment anywhere on a line.
Every key has a default, so a config file only needs the keys it changes.
Unknown keys and empty values are errors, reported with line numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .enhancers import AlrsParams, EdbiParams, EpceParams
from .errors import ConfigError
from .pipelines import ClaheSettings, HvsThresholds, MergeParams, MheParams, PipelineConfig
from .speckle import FrostParams


@dataclass(frozen=True)
class AppConfig:
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    cii_stride: int = 1

    def __post_init__(self):
        if self.cii_stride < 1:
            raise ValueError("cii.stride must be >= 1")


def default_config() -> AppConfig:
    return AppConfig()


def _num(value: float) -> str:
    return format(value, "g")


def config_items(cfg: AppConfig) -> list[tuple[str, str]]:
    """Every key with its current value, in the canonical dump order."""
    p = cfg.pipeline
    return [
        ("hvs.low_ratio", _num(p.hvs.low_ratio)),
        ("hvs.mid_ratio", _num(p.hvs.mid_ratio)),
        ("hvs.high_ratio", _num(p.hvs.high_ratio)),
        ("hvs.gradient_gain", _num(p.hvs.gradient_gain)),
        ("epce.gain", _num(p.epce.gain)),
        ("epce.highpass_exp", _num(p.epce.highpass_exp)),
        ("epce.edge_exp", _num(p.epce.edge_exp)),
        ("epce.cutoff", _num(p.epce.cutoff)),
        ("epce.range_max", _num(p.epce.range_max)),
        ("edbi.boost", _num(p.edbi.boost)),
        ("edbi.contrast", _num(p.edbi.contrast)),
        ("edbi.threshold", "mean" if p.edbi.threshold is None else _num(p.edbi.threshold)),
        ("clahe.clip", _num(p.clahe.clip_limit)),
        ("clahe.tile_div", str(p.clahe.tile_div)),
        ("frost.size", str(p.frost.size)),
        ("frost.damping", _num(p.frost.damping)),
        ("merge.mode", p.merge.mode),
        ("merge.w1", _num(p.merge.layer_weights[0])),
        ("merge.w2", _num(p.merge.layer_weights[1])),
        ("merge.w3", _num(p.merge.layer_weights[2])),
        ("merge.original_weight", _num(p.merge.original_weight)),
        ("merge.enhanced_weight", _num(p.merge.enhanced_weight)),
        ("alrs.level", _num(p.alrs.level)),
        ("mhe.classes", "auto" if p.mhe.classes is None else str(p.mhe.classes)),
        ("mhe.auto_weight", _num(p.mhe.auto_weight)),
        ("mhe.max_classes", str(p.mhe.max_classes)),
        ("hvsedge.epce_region", p.hvsedge_epce_region),
        ("cii.stride", str(cfg.cii_stride)),
    ]


def dump_config(cfg: AppConfig) -> str:
    return "".join(f"{key} = {value}\n" for key, value in config_items(cfg))


def _as_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {value!r}") from None


def _as_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None


def _build(raw: dict[str, str]) -> AppConfig:
    threshold_raw = raw["edbi.threshold"]
    threshold = None if threshold_raw == "mean" else _as_float("edbi.threshold", threshold_raw)
    classes_raw = raw["mhe.classes"]
    classes = None if classes_raw == "auto" else _as_int("mhe.classes", classes_raw)
    try:
        pipeline = PipelineConfig(
            hvs=HvsThresholds(
                low_ratio=_as_float("hvs.low_ratio", raw["hvs.low_ratio"]),
                mid_ratio=_as_float("hvs.mid_ratio", raw["hvs.mid_ratio"]),
                high_ratio=_as_float("hvs.high_ratio", raw["hvs.high_ratio"]),
                gradient_gain=_as_float("hvs.gradient_gain", raw["hvs.gradient_gain"]),
            ),
            epce=EpceParams(
                gain=_as_float("epce.gain", raw["epce.gain"]),
                highpass_exp=_as_float("epce.highpass_exp", raw["epce.highpass_exp"]),
                edge_exp=_as_float("epce.edge_exp", raw["epce.edge_exp"]),
                cutoff=_as_float("epce.cutoff", raw["epce.cutoff"]),
                range_max=_as_float("epce.range_max", raw["epce.range_max"]),
            ),
            edbi=EdbiParams(
                boost=_as_float("edbi.boost", raw["edbi.boost"]),
                contrast=_as_float("edbi.contrast", raw["edbi.contrast"]),
                threshold=threshold,
            ),
            clahe=ClaheSettings(
                clip_limit=_as_float("clahe.clip", raw["clahe.clip"]),
                tile_div=_as_int("clahe.tile_div", raw["clahe.tile_div"]),
            ),
            frost=FrostParams(
                size=_as_int("frost.size", raw["frost.size"]),
                damping=_as_float("frost.damping", raw["frost.damping"]),
            ),
            merge=MergeParams(
                mode=raw["merge.mode"],
                layer_weights=(
                    _as_float("merge.w1", raw["merge.w1"]),
                    _as_float("merge.w2", raw["merge.w2"]),
                    _as_float("merge.w3", raw["merge.w3"]),
                ),
                original_weight=_as_float("merge.original_weight", raw["merge.original_weight"]),
                enhanced_weight=_as_float("merge.enhanced_weight", raw["merge.enhanced_weight"]),
            ),
            alrs=AlrsParams(level=_as_float("alrs.level", raw["alrs.level"])),
            mhe=MheParams(
                classes=classes,
                auto_weight=_as_float("mhe.auto_weight", raw["mhe.auto_weight"]),
                max_classes=_as_int("mhe.max_classes", raw["mhe.max_classes"]),
            ),
            hvsedge_epce_region=raw["hvsedge.epce_region"],
        )
        return AppConfig(pipeline=pipeline, cii_stride=_as_int("cii.stride", raw["cii.stride"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def parse_config_text(text: str, base: AppConfig | None = None) -> AppConfig:
    """Overlay key/value lines onto ``base`` (or the defaults) and validate."""
    raw = dict(config_items(base if base is not None else default_config()))
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in raw:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if not value:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")
        raw[key] = value
    return _build(raw)


def load_config(path, base: AppConfig | None = None) -> AppConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, base)
