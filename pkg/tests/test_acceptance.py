"""End-to-end guarantees for the released behavior.

Each test prints one PASS/FAIL line naming the guarantee it checks, so a
full run doubles as a checklist. Tolerances are part of the guarantee and
are stated next to each comparison.
"""

import itertools
import math
import time

import numpy as np
import pytest

from lumen.clahe import ClaheParams, clahe, multilayer
from lumen.cli import main
from lumen.fixtures import contrast_corpus, standard_corpus, write_corpus
from lumen.hvs import recombine, segment
from lumen.image_io import load_image, save_image
from lumen.metrics import ambe, cii, psnr
from lumen.mhe import discrepancy, threshold_matrix
from lumen.pipelines import Method, run_method
from lumen.raster import Histogram, entropy, equalize
from lumen.speckle import frost, median


def _verdict(ok: bool, name: str) -> None:
    print(("PASS: " if ok else "FAIL: ") + name)
    assert ok, name


def _fuzzed_image(rng: np.random.Generator, lo_side=8, hi_side=40) -> np.ndarray:
    h = int(rng.integers(lo_side, hi_side))
    w = int(rng.integers(lo_side, hi_side))
    kind = rng.integers(0, 3)
    if kind == 0:
        img = rng.integers(0, 256, (h, w)).astype(np.uint8)
    elif kind == 1:
        ramp = np.linspace(0, float(rng.integers(30, 256)), w)
        img = np.clip(ramp[None, :] + rng.normal(0, 20, (h, w)), 0, 255).astype(np.uint8)
    else:
        img = np.repeat(
            rng.integers(0, 256, (max(1, h // 4), w)), 4, axis=0
        )[:h].astype(np.uint8)
    if img.min() == img.max():
        img[0, 0] = (int(img[0, 0]) + 1) % 256
    return img


def test_split_search_matches_exhaustive_minimum():
    rng = np.random.default_rng(2024)
    started = time.monotonic()
    worst = 0.0
    for _ in range(200):
        n_occupied = int(rng.integers(2, 17))
        levels = np.sort(rng.choice(256, size=n_occupied, replace=False))
        bins = np.zeros(256, dtype=np.int64)
        bins[levels] = rng.integers(1, 50, n_occupied)
        hist = Histogram(bins=bins, total=int(bins.sum()))
        tm = threshold_matrix(hist, max_classes=4)
        # cache the cost of every contiguous run of occupied levels
        run_cost = {
            (i, j): discrepancy(hist, int(levels[i]), int(levels[j]))
            for i in range(n_occupied)
            for j in range(i, n_occupied)
        }
        for k in (2, 3, 4):
            dp = float(tm.cost[k, 255]) / hist.total
            if k >= n_occupied:
                best = 0.0
            else:
                best = min(
                    sum(
                        run_cost[start, stop - 1]
                        for start, stop in zip((0,) + cuts, cuts + (n_occupied,))
                    )
                    for cuts in itertools.combinations(range(1, n_occupied), k - 1)
                )
            worst = max(worst, abs(dp - best))
    elapsed = time.monotonic() - started
    _verdict(
        worst <= 1e-9 and elapsed < 10.0,
        "class-split search equals the exhaustive minimum "
        f"(max deviation {worst:.2e}, {elapsed:.1f}s)",
    )


def test_single_tile_reduces_to_global_equalization():
    rng = np.random.default_rng(2025)
    ok = True
    for _ in range(50):
        img = rng.integers(0, 256, (64, 64)).astype(np.uint8)
        params = ClaheParams(tile_width=64, tile_height=64, clip_limit=math.inf)
        ok = ok and (clahe(img, params) == equalize(img)).all()
    _verdict(bool(ok), "single-tile unclipped adaptive equalization matches plain equalization bit-exactly")


def test_metric_hand_values():
    base = np.full((16, 16), 100, dtype=np.uint8)
    off_by_one = abs(psnr(base, base + 1) - 48.1308)
    checker = np.fromfunction(lambda y, x: (y + x) % 2, (8, 8))
    dull = np.where(checker == 0, 100, 150).astype(np.uint8)
    vivid = np.where(checker == 0, 0, 250).astype(np.uint8)
    stretch = abs(cii(dull, vivid) - 5.0)
    quad = np.array([[1, 2], [3, 4]], dtype=np.uint8)
    ok = (
        off_by_one <= 1e-3
        and ambe(quad, np.zeros((2, 2), dtype=np.uint8)) == 2.5
        and ambe(base, base) == 0.0
        and psnr(np.zeros((4, 4), dtype=np.uint8), np.full((4, 4), 255, dtype=np.uint8)) == 0.0
        and psnr(base, base) == math.inf
        and cii(dull, dull) == 1.0
        and stretch <= 1e-9
    )
    _verdict(
        bool(ok),
        "metric hand values hold (off-by-one PSNR within 1e-3 dB, AMBE exact, "
        "checkerboard contrast ratio within 1e-9)",
    )


def test_segmentation_partitions_and_recombines_exactly():
    rng = np.random.default_rng(2026)
    ok = True
    for _ in range(500):
        img = _fuzzed_image(rng)
        seg = segment(img)
        coverage = sum(m.astype(np.int64) for m in seg.masks)
        ok = ok and (coverage == 1).all()
        for a, b in itertools.combinations(seg.masks, 2):
            ok = ok and not (a & b).any()
        ok = ok and (recombine(seg, (img, img, img), img) == img).all()
    _verdict(bool(ok), "segmentation masks partition 500 fuzzed images and identity recombination is bit-exact")


def test_filter_fixed_points_and_window_bounds():
    rng = np.random.default_rng(2027)
    ok = True
    for value in (0, 1, 77, 255):
        flat = np.full((9, 9), value, dtype=np.uint8)
        ok = ok and (frost(flat) == flat).all()
        ok = ok and (median(flat) == flat).all()
    for _ in range(100):
        img = _fuzzed_image(rng)
        out = frost(img)
        padded = np.pad(img, 1, mode="edge")
        windows = np.lib.stride_tricks.sliding_window_view(padded, (3, 3))
        ok = ok and (out >= windows.min(axis=(2, 3))).all()
        ok = ok and (out <= windows.max(axis=(2, 3))).all()
    _verdict(bool(ok), "smoothing filters fix constant images and stay inside each window's range on 100 fuzzed images")


def test_largest_entropy_shift_gets_largest_weight():
    from lumen.pipelines import entropy_weights

    rng = np.random.default_rng(2028)
    ok = True
    for _ in range(100):
        img = _fuzzed_image(rng, lo_side=16, hi_side=48)
        layers = list(multilayer(img))
        weights = entropy_weights(img, layers)
        base = entropy(img)
        shifts = [abs(entropy(layer) - base) for layer in layers]
        ok = ok and int(np.argmax(weights)) == int(np.argmax(shifts))
        ok = ok and abs(sum(weights) - 1.0) <= 1e-9
    _verdict(bool(ok), "the layer with the largest entropy shift always receives the largest merge weight (100 fuzzed images)")


@pytest.fixture(scope="module")
def dark_corpus_results():
    corpus = standard_corpus()
    methods = (Method.HVS, Method.HVSEDGE, Method.HVSEDBI, Method.MCLAHEFROST)
    return {
        name: {m: run_method(m, img).image for m in methods}
        for name, img in corpus.items()
    }


def test_brightness_and_fidelity_orderings_on_dark_scenes():
    started = time.monotonic()
    corpus = standard_corpus()
    methods = (Method.HVS, Method.HVSEDGE, Method.HVSEDBI, Method.MCLAHEFROST)
    ambe_hits = 0
    psnr_hits = 0
    for name, img in corpus.items():
        outs = {m: run_method(m, img).image for m in methods}
        a = {m: ambe(img, outs[m]) for m in methods}
        p = {m: psnr(img, outs[m]) for m in methods}
        if (
            a[Method.MCLAHEFROST] < a[Method.HVSEDBI] < a[Method.HVSEDGE] < a[Method.HVS]
        ):
            ambe_hits += 1
        if (
            p[Method.MCLAHEFROST] > p[Method.HVSEDBI] > p[Method.HVSEDGE] > p[Method.HVS]
        ):
            psnr_hits += 1
    elapsed = time.monotonic() - started
    _verdict(
        ambe_hits >= 5 and psnr_hits >= 5 and elapsed < 120.0,
        "brightness drift rises and fidelity falls along the method chain on the dark corpus "
        f"(AMBE {ambe_hits}/7, PSNR {psnr_hits}/7, {elapsed:.1f}s)",
    )


def test_contrast_orderings(dark_corpus_results):
    corpus = standard_corpus()
    chain_hits = 0
    for name, img in corpus.items():
        outs = dark_corpus_results[name]
        c = {m: cii(img, outs[m]) for m in (Method.HVS, Method.HVSEDGE, Method.HVSEDBI)}
        if c[Method.HVSEDBI] > c[Method.HVSEDGE] > c[Method.HVS] >= 1.0:
            chain_hits += 1
    variants = (Method.MCLAHEALRS, Method.MCLAHEMHE, Method.MCLAHEEDBI)
    top_hits = 0
    for name, img in contrast_corpus().items():
        scores = {m: cii(img, run_method(m, img).image) for m in variants}
        if scores[Method.MCLAHEALRS] > max(scores[Method.MCLAHEMHE], scores[Method.MCLAHEEDBI]):
            top_hits += 1
    _verdict(
        chain_hits >= 5 and top_hits >= 7,
        "contrast gain grows along the method chain and the adaptive-blend variant leads "
        f"(chain {chain_hits}/7, leader {top_hits}/10)",
    )


def test_thread_count_does_not_change_reports(tmp_path):
    corpus_dir = tmp_path / "corpus"
    write_corpus(corpus_dir, size=64, kind="all")
    out1 = tmp_path / "jobs1"
    out8 = tmp_path / "jobs8"
    code1 = main(["benchmark", str(corpus_dir), "--output", str(out1), "--jobs", "1"])
    code8 = main(["benchmark", str(corpus_dir), "--output", str(out8), "--jobs", "8"])
    ok = code1 == 0 and code8 == 0
    for table in ("psnr.csv", "ambe.csv", "cii.csv"):
        ok = ok and (out1 / table).read_bytes() == (out8 / table).read_bytes()
    _verdict(bool(ok), "benchmark reports are byte-identical with 1 and 8 worker threads")


def test_image_round_trips_are_bit_exact(tmp_path):
    rng = np.random.default_rng(2029)
    ok = True
    for i in range(50):
        img = _fuzzed_image(rng)
        pgm = tmp_path / f"f{i}.pgm"
        png = tmp_path / f"f{i}.png"
        save_image(pgm, img)
        save_image(png, img)
        ok = ok and (load_image(pgm) == img).all()
        ok = ok and (load_image(png) == img).all()
    _verdict(bool(ok), "PGM and PNG save/load round-trips are bit-exact on 50 fuzzed images")
