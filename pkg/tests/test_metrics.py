import math

import numpy as np
import pytest

from lumen.errors import DimensionMismatch, ZeroContrastOriginal
from lumen.metrics import MetricReport, ambe, cii, psnr


def _checker(a: int, b: int, shape=(8, 8)) -> np.ndarray:
    img = np.fromfunction(lambda y, x: (y + x) % 2, shape)
    return np.where(img == 0, a, b).astype(np.uint8)


def test_psnr_identical_is_infinite():
    img = np.arange(64, dtype=np.uint8).reshape(8, 8)
    assert psnr(img, img) == math.inf


def test_psnr_off_by_one_everywhere():
    a = np.full((16, 16), 100, dtype=np.uint8)
    assert psnr(a, a + 1) == pytest.approx(48.130803609, abs=1e-6)


def test_psnr_maximal_error_is_zero():
    a = np.zeros((4, 4), dtype=np.uint8)
    b = np.full((4, 4), 255, dtype=np.uint8)
    assert psnr(a, b) == 0.0


def test_psnr_is_symmetric():
    rng = np.random.default_rng(61)
    a = rng.integers(0, 256, (9, 9)).astype(np.uint8)
    b = rng.integers(0, 256, (9, 9)).astype(np.uint8)
    assert psnr(a, b) == psnr(b, a)


def test_psnr_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        psnr(np.zeros((2, 2), dtype=np.uint8), np.zeros((2, 3), dtype=np.uint8))


def test_ambe_exact_values():
    a = np.array([[1, 2], [3, 4]], dtype=np.uint8)
    z = np.zeros((2, 2), dtype=np.uint8)
    assert ambe(a, z) == 2.5
    assert ambe(a, a) == 0.0
    b = np.array([[0, 255]], dtype=np.uint8)
    w = np.array([[255, 255]], dtype=np.uint8)
    assert ambe(b, w) == 127.5


def test_cii_identity_is_one():
    img = _checker(100, 150)
    assert cii(img, img) == pytest.approx(1.0, abs=1e-12)


def test_cii_checkerboard_stretch():
    # window contrast rises from 50/250 to 250/250
    assert cii(_checker(100, 150), _checker(0, 250)) == pytest.approx(5.0, abs=1e-9)


def test_cii_constant_output_is_zero():
    img = _checker(100, 150)
    flat = np.full_like(img, 90)
    assert cii(img, flat) == 0.0
    black = np.zeros_like(img)
    assert cii(img, black) == 0.0


def test_cii_constant_reference_raises():
    flat = np.full((8, 8), 90, dtype=np.uint8)
    with pytest.raises(ZeroContrastOriginal):
        cii(flat, _checker(0, 250))
    with pytest.raises(ZeroContrastOriginal):
        cii(np.zeros((8, 8), dtype=np.uint8), _checker(0, 250))


def test_cii_stride_skips_windows():
    # column bands: windows centered at col 0 and col 1 carry contrasts
    # 0.2 and 0.5 in the reference, both 1.0 in the output
    ref = np.tile(np.array([100, 150, 100, 50], dtype=np.uint8), (3, 1))
    out = np.tile(np.array([0, 250, 0, 250], dtype=np.uint8), (3, 1))
    assert cii(ref, out) == pytest.approx(1.0 / 0.35, abs=1e-12)
    assert cii(ref, out, stride=2) == pytest.approx(5.0, abs=1e-12)


def test_cii_stride_validation():
    img = _checker(100, 150)
    with pytest.raises(ValueError):
        cii(img, img, stride=0)


def test_cii_needs_a_window():
    small = np.zeros((2, 5), dtype=np.uint8)
    with pytest.raises(DimensionMismatch):
        cii(small, small)


def test_metric_report_fields():
    report = MetricReport(psnr=1.0, ambe=2.0, cii=None, method="he", image_id="x")
    assert report.cii is None
    assert report.method == "he"
