"""Command line: enhance single images, benchmark a corpus, score pairs.

Exit codes: 0 success, 2 input problems, 3 configuration problems,
4 pipeline failures (including a benchmark where every cell failed).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .config import AppConfig, default_config, dump_config, load_config
from .errors import (
    ChannelMismatch,
    ConfigError,
    CorruptFile,
    DimensionMismatch,
    LumenError,
    UnsupportedFormat,
    ZeroContrastOriginal,
)
from .image_io import load_image, save_image
from .metrics import ambe, cii, psnr
from .pipelines import Method, enhance_color, run_method

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_PIPELINE = 4

_METHOD_NAMES = tuple(m.value for m in Method)
_CORPUS_SUFFIXES = (".pgm", ".pnm", ".png")
_CHANNEL_NAMES = ("red", "green", "blue")


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("LUMEN_JOBS", "")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lumen",
        description="Contrast enhancement for unevenly lit 8-bit images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enhance = sub.add_parser("enhance", help="enhance one image and report its scores")
    enhance.add_argument("input", type=Path, help="PGM or PNG image")
    enhance.add_argument("--method", choices=_METHOD_NAMES, help="enhancement method")
    enhance.add_argument("--output", type=Path, help="where to write the enhanced image")
    enhance.add_argument("--config", type=Path, help="configuration file")
    enhance.add_argument(
        "--print-config", action="store_true", help="print the effective configuration and exit"
    )
    enhance.set_defaults(func=_cmd_enhance)

    bench = sub.add_parser("benchmark", help="run every method over a corpus directory")
    bench.add_argument("corpus", type=Path, help="directory of PGM/PNG images")
    bench.add_argument("--output", type=Path, required=True, help="directory for tables and images")
    bench.add_argument("--jobs", type=int, help="worker threads (default: LUMEN_JOBS or 1)")
    bench.add_argument("--format", choices=("csv", "json"), default="csv", help="table format")
    bench.add_argument("--config", type=Path, help="configuration file")
    bench.add_argument(
        "--print-config", action="store_true", help="print the effective configuration and exit"
    )
    bench.set_defaults(func=_cmd_benchmark)

    metrics = sub.add_parser("metrics", help="score a produced image against its original")
    metrics.add_argument("original", type=Path)
    metrics.add_argument("produced", type=Path)
    metrics.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    metrics.add_argument("--config", type=Path, help="configuration file")
    metrics.add_argument(
        "--print-config", action="store_true", help="print the effective configuration and exit"
    )
    metrics.set_defaults(func=_cmd_metrics)
    return parser


def _load_cfg(args) -> AppConfig:
    if args.config is not None:
        return load_config(args.config)
    return default_config()


def _json_num(value: float):
    return "inf" if math.isinf(value) else value


def _score(original: np.ndarray, produced: np.ndarray, stride: int) -> dict:
    try:
        contrast = cii(original, produced, stride)
    except ZeroContrastOriginal:
        contrast = None
    return {
        "psnr": _json_num(psnr(original, produced)),
        "ambe": ambe(original, produced),
        "cii": "undefined" if contrast is None else contrast,
    }


def _cmd_enhance(args) -> int:
    cfg = _load_cfg(args)
    if args.print_config:
        sys.stdout.write(dump_config(cfg))
        return EXIT_OK
    if args.method is None:
        sys.stderr.write("lumen enhance: --method is required\n")
        return EXIT_INPUT
    image = load_image(args.input)
    payload = {
        "image": str(args.input),
        "output": None if args.output is None else str(args.output),
        "method": args.method,
    }
    if image.ndim == 3:
        enhanced, notes = enhance_color(image, args.method, cfg.pipeline)
        channels = {}
        for idx, name in enumerate(_CHANNEL_NAMES):
            before = np.ascontiguousarray(image[:, :, idx])
            after = np.ascontiguousarray(enhanced[:, :, idx])
            channels[name] = _score(before, after, cfg.cii_stride)
            channels[name]["notes"] = list(notes[name])
        payload["channels"] = channels
    else:
        result = run_method(args.method, image, cfg.pipeline)
        enhanced = result.image
        payload.update(_score(image, enhanced, cfg.cii_stride))
        payload["notes"] = list(result.notes)
    if args.output is not None:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        save_image(args.output, enhanced)
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK


def _failure(exc: Exception) -> str:
    reason = str(exc) or type(exc).__name__
    return "failed:" + reason.replace(",", ";").replace("\n", " ")


def _is_failure(value) -> bool:
    return isinstance(value, str) and value.startswith("failed:")


def _csv_cell(value) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, str):
        return value
    return format(float(value), ".2f")


def _json_cell(value):
    if value is None:
        return "undefined"
    if isinstance(value, str):
        return value
    return _json_num(float(value))


def _benchmark_cell(path: Path, method: Method, cfg: AppConfig, out_dir: Path) -> dict:
    try:
        image = load_image(path)
        if image.ndim != 2:
            raise UnsupportedFormat("color images are not benchmarked")
        result = run_method(method, image, cfg.pipeline)
        save_image(out_dir / method.value / path.name, result.image)
        try:
            contrast = cii(image, result.image, cfg.cii_stride)
        except ZeroContrastOriginal:
            contrast = None
        return {
            "psnr": psnr(image, result.image),
            "ambe": ambe(image, result.image),
            "cii": contrast,
        }
    except Exception as exc:
        cell = _failure(exc)
        return {"psnr": cell, "ambe": cell, "cii": cell}


def _write_table(path: Path, fmt: str, metric: str, image_names, cells) -> None:
    if fmt == "csv":
        lines = ["image," + ",".join(_METHOD_NAMES)]
        for name in image_names:
            row = [name] + [_csv_cell(cells[name, m][metric]) for m in _METHOD_NAMES]
            lines.append(",".join(row))
        path.write_text("\n".join(lines) + "\n", encoding="ascii")
        return
    payload = {
        "metric": metric,
        "methods": list(_METHOD_NAMES),
        "images": {
            name: {m: _json_cell(cells[name, m][metric]) for m in _METHOD_NAMES}
            for name in image_names
        },
    }
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="ascii")


def _cmd_benchmark(args) -> int:
    cfg = _load_cfg(args)
    if args.print_config:
        sys.stdout.write(dump_config(cfg))
        return EXIT_OK
    if not args.corpus.is_dir():
        raise FileNotFoundError(f"{args.corpus} is not a directory")
    files = sorted(
        (p for p in args.corpus.iterdir() if p.suffix.lower() in _CORPUS_SUFFIXES),
        key=lambda p: p.name,
    )
    if not files:
        sys.stderr.write(f"lumen benchmark: no corpus images in {args.corpus}\n")
        return EXIT_INPUT
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    jobs = max(1, jobs)
    out_dir = args.output
    out_dir.mkdir(parents=True, exist_ok=True)
    for method in Method:
        (out_dir / method.value).mkdir(exist_ok=True)

    pairs = [(path, method) for path in files for method in Method]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = {
            (path.name, method.value): pool.submit(_benchmark_cell, path, method, cfg, out_dir)
            for path, method in pairs
        }
        cells = {key: future.result() for key, future in futures.items()}

    image_names = [p.name for p in files]
    for metric in ("psnr", "ambe", "cii"):
        table = out_dir / f"{metric}.{args.format}"
        _write_table(table, args.format, metric, image_names, cells)
        print(str(table))
    all_failed = all(
        _is_failure(cells[name, m]["psnr"]) for name in image_names for m in _METHOD_NAMES
    )
    return EXIT_PIPELINE if all_failed else EXIT_OK


def _cmd_metrics(args) -> int:
    cfg = _load_cfg(args)
    if args.print_config:
        sys.stdout.write(dump_config(cfg))
        return EXIT_OK
    original = load_image(args.original)
    produced = load_image(args.produced)
    if original.ndim != 2 or produced.ndim != 2:
        sys.stderr.write("lumen metrics: images must be grayscale\n")
        return EXIT_INPUT
    scores = _score(original, produced, cfg.cii_stride)
    if args.format == "json":
        print(json.dumps(scores, sort_keys=True))
    else:
        print("psnr,ambe,cii")
        print(",".join(_csv_cell(scores[k]) for k in ("psnr", "ambe", "cii")))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"lumen: config error: {exc}\n")
        return EXIT_CONFIG
    except (UnsupportedFormat, CorruptFile, DimensionMismatch, ChannelMismatch) as exc:
        sys.stderr.write(f"lumen: input error: {exc}\n")
        return EXIT_INPUT
    except (FileNotFoundError, IsADirectoryError, NotADirectoryError, PermissionError) as exc:
        sys.stderr.write(f"lumen: input error: {exc}\n")
        return EXIT_INPUT
    except LumenError as exc:
        sys.stderr.write(f"lumen: pipeline error: {exc}\n")
        return EXIT_PIPELINE
    except OSError as exc:
        sys.stderr.write(f"lumen: i/o error: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        sys.stderr.write(f"lumen: pipeline error: {exc}\n")
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())
