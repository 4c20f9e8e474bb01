"""Reading and writing 8-bit PGM and PNG images.

Files are sniffed by magic bytes, not extension, on load. PGM parsing is
done here directly (binary P5, maxval 255); PNG goes through Pillow and is
restricted to 8-bit grayscale and RGB.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import CorruptFile, UnsupportedFormat

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _read_pgm_token(stream: io.BufferedIOBase) -> bytes:
    """Next whitespace-delimited token, skipping '#' comments to end of line."""
    token = b""
    while True:
        ch = stream.read(1)
        if ch == b"":
            if token:
                return token
            raise CorruptFile("truncated header")
        if ch == b"#":
            while ch not in (b"", b"\n"):
                ch = stream.read(1)
            continue
        if ch.isspace():
            if token:
                return token
            continue
        token += ch


def _parse_pgm(data: bytes, path: Path) -> np.ndarray:
    stream = io.BytesIO(data)
    magic = _read_pgm_token(stream)
    if magic != b"P5":
        raise UnsupportedFormat(f"{path}: not a binary PGM")
    try:
        width = int(_read_pgm_token(stream))
        height = int(_read_pgm_token(stream))
        maxval = int(_read_pgm_token(stream))
    except ValueError as exc:
        raise CorruptFile(f"{path}: malformed PGM header") from exc
    if width <= 0 or height <= 0:
        raise CorruptFile(f"{path}: bad PGM dimensions {width}x{height}")
    if maxval != 255:
        raise UnsupportedFormat(f"{path}: only maxval 255 PGM is supported")
    pixels = stream.read(width * height)
    if len(pixels) < width * height:
        raise CorruptFile(f"{path}: truncated PGM pixel data")
    return np.frombuffer(pixels, dtype=np.uint8).reshape(height, width).copy()


def _parse_png(data: bytes, path: Path) -> np.ndarray:
    try:
        with Image.open(io.BytesIO(data)) as img:
            img.load()
            if img.mode == "L":
                return np.asarray(img, dtype=np.uint8).copy()
            if img.mode == "RGB":
                return np.asarray(img, dtype=np.uint8).copy()
            raise UnsupportedFormat(f"{path}: PNG mode {img.mode} is not supported")
    except UnidentifiedImageError as exc:
        raise CorruptFile(f"{path}: not a decodable PNG") from exc
    except (OSError, SyntaxError) as exc:
        raise CorruptFile(f"{path}: damaged PNG data") from exc


def load_image(path) -> np.ndarray:
    """Load a grayscale (2-D) or RGB (3-D) uint8 array, sniffing the format."""
    path = Path(path)
    data = path.read_bytes()
    if data.startswith(b"P5"):
        return _parse_pgm(data, path)
    if data.startswith(_PNG_MAGIC):
        return _parse_png(data, path)
    raise UnsupportedFormat(f"{path}: unrecognized image format")


def save_image(path, image: np.ndarray) -> None:
    """Write a uint8 array by extension: .pgm/.pnm grayscale, .png gray or RGB."""
    path = Path(path)
    arr = np.asarray(image)
    if arr.dtype != np.uint8:
        raise ValueError(f"expected uint8 pixels, got {arr.dtype}")
    suffix = path.suffix.lower()
    if suffix in (".pgm", ".pnm"):
        if arr.ndim != 2:
            raise UnsupportedFormat("PGM output is grayscale only")
        h, w = arr.shape
        header = f"P5\n{w} {h}\n255\n".encode("ascii")
        path.write_bytes(header + arr.tobytes())
        return
    if suffix == ".png":
        if arr.ndim == 2:
            Image.fromarray(arr, mode="L").save(path, format="PNG")
            return
        if arr.ndim == 3 and arr.shape[2] == 3:
            Image.fromarray(arr, mode="RGB").save(path, format="PNG")
            return
        raise UnsupportedFormat(f"cannot write array of shape {arr.shape} as PNG")
    raise UnsupportedFormat(f"unsupported output extension {suffix!r}")
