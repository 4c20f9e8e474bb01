import math

import numpy as np
import pytest

from lumen.clahe import ClaheParams, clahe, clip_histogram, multilayer
from lumen.errors import ImageTooSmall, TileTooLarge
from lumen.raster import equalize


def test_params_validation():
    with pytest.raises(ValueError):
        ClaheParams(tile_width=1, tile_height=4)
    with pytest.raises(ValueError):
        ClaheParams(tile_width=4, tile_height=4, clip_limit=1.0)
    ClaheParams(tile_width=2, tile_height=2, clip_limit=math.inf)


def test_clip_histogram_redistributes_exactly():
    bins = np.zeros(256, dtype=np.int64)
    bins[10] = 300
    bins[20] = 100
    bins[200] = 620
    out = clip_histogram(bins, 2.0, 1024)
    # ceiling 8; excess 996 spreads 3 to every bin plus 1 to the first 228
    assert out.sum() == 1020
    assert out[:4].tolist() == [4, 4, 4, 4]
    assert out[10] == 12 and out[20] == 12 and out[200] == 12
    assert out[250] == 3


def test_clip_histogram_infinite_limit_is_copy():
    bins = np.zeros(256, dtype=np.int64)
    bins[5] = 999
    out = clip_histogram(bins, math.inf, 999)
    assert (out == bins).all()
    assert out is not bins


def test_clip_histogram_no_excess():
    bins = np.ones(256, dtype=np.int64)
    out = clip_histogram(bins, 2.0, 256)
    assert (out == bins).all()


def test_single_tile_unclipped_equals_equalize():
    rng = np.random.default_rng(17)
    img = rng.integers(0, 256, (32, 48)).astype(np.uint8)
    params = ClaheParams(tile_width=48, tile_height=32, clip_limit=math.inf)
    assert (clahe(img, params) == equalize(img)).all()


def test_two_by_two_tiles_hand_case():
    img = np.array([[10, 10, 200, 200], [10, 20, 200, 210]], dtype=np.uint8)
    params = ClaheParams(tile_width=2, tile_height=2, clip_limit=math.inf)
    assert clahe(img, params).tolist() == [[191, 143, 207, 191], [191, 191, 207, 255]]


def test_two_by_two_tiles_clipped_hand_case():
    # four-pixel tiles clip every bin down to one count
    img = np.array([[10, 10, 200, 200], [10, 20, 200, 210]], dtype=np.uint8)
    params = ClaheParams(tile_width=2, tile_height=2, clip_limit=2.0)
    assert clahe(img, params).tolist() == [[191, 175, 207, 191], [191, 223, 207, 255]]


def test_tile_larger_than_image():
    img = np.zeros((8, 8), dtype=np.uint8)
    with pytest.raises(TileTooLarge):
        clahe(img, ClaheParams(tile_width=9, tile_height=4))


def test_ragged_last_tile_is_accepted():
    rng = np.random.default_rng(23)
    img = rng.integers(0, 256, (10, 13)).astype(np.uint8)
    out = clahe(img, ClaheParams(tile_width=4, tile_height=4))
    assert out.shape == img.shape
    assert out.dtype == np.uint8


def test_multilayer_shapes_and_min_size():
    rng = np.random.default_rng(29)
    img = rng.integers(0, 256, (32, 32)).astype(np.uint8)
    layers = multilayer(img)
    assert len(list(layers)) == 3
    for layer in layers:
        assert layer.shape == img.shape
    with pytest.raises(ImageTooSmall):
        multilayer(np.zeros((15, 32), dtype=np.uint8))


def test_multilayer_layers_differ_on_structured_input():
    base = np.linspace(0, 255, 64).astype(np.uint8)
    img = np.tile(base, (64, 1))
    img[16:48, 16:48] //= 3
    layers = multilayer(img)
    assert not (layers.coarse == layers.fine).all()
