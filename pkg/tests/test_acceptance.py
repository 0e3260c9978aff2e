"""Exit criteria. Each test records one PASS/FAIL line, printed in the terminal summary."""

import contextlib
import math
import statistics
import time

import numpy as np
import pytest

from darken.analysis import (AnalysisConfig, Brightness, Decision, Strategy, _positions, analyze,
                             classify)
from darken.compositor import ScenarioOptions, frame_stats, run_scenario
from darken.imagebuf import ImageBuffer, PixelFormat
from darken.metrics import apl, corpus_report
from darken.synth import (app_corpus, flicker_scene, layout_image, letterbox_scene,
                          static_bright_scene)
from darken.transform import apply, inversion_matrix

from conftest import ACCEPTANCE_LINES, random_buffer


@contextlib.contextmanager
def criterion(number, title):
    detail = {}
    try:
        yield detail
    except BaseException as exc:
        ACCEPTANCE_LINES.append(f"[FAIL] {number}. {title}: {exc!s:.200}")
        raise
    extra = ", ".join(f"{k}={v}" for k, v in detail.items())
    ACCEPTANCE_LINES.append(f"[PASS] {number}. {title}" + (f" ({extra})" if extra else ""))


@pytest.fixture(scope="module")
def corpus_result():
    t0 = time.perf_counter()
    reports, summary = corpus_report(app_corpus())
    return reports, summary, time.perf_counter() - t0


def test_1_inversion_involution():
    with criterion(1, "inversion involution on 1000 random buffers") as d:
        rng = np.random.default_rng(1)
        inv = inversion_matrix()
        t0 = time.perf_counter()
        formats = set()
        for _ in range(1000):
            buf = random_buffer(rng, max_side=48)
            formats.add(buf.format)
            assert apply(apply(buf, inv), inv).data == buf.data
        elapsed = time.perf_counter() - t0
        d["seconds"] = f"{elapsed:.2f}"
        assert formats == set(PixelFormat)
        assert elapsed < 10


def test_2_apl_complement():
    with criterion(2, "APL complement |apl(inv b) - (1 - apl b)| <= 1e-9") as d:
        rng = np.random.default_rng(2)
        worst = 0.0
        for _ in range(1000):
            buf = random_buffer(rng, max_side=48)
            worst = max(worst, abs(apl(apply(buf, inversion_matrix())) - (1 - apl(buf))))
        d["max_error"] = f"{worst:.2e}"
        assert worst <= 1e-9


def test_3_threshold_boundaries():
    with criterion(3, "threshold boundaries 1224/816/1000"):
        assert classify(1224) is Brightness.BRIGHT
        assert classify(816) is Brightness.DARK
        assert classify(1000) is Brightness.MID


def test_4_sampling_agrees_with_full_scan():
    with criterion(4, "SAMPLED vs FULL_SCAN on 500 1080x1920 images, margin >= 10 points") as d:
        rng = np.random.default_rng(4)
        full_cfg = AnalysisConfig(strategy=Strategy.FULL_SCAN)
        t0 = time.perf_counter()
        agree = used = 0
        while used < 500:
            buf = layout_image(rng, 1080, 1920)
            full, oracle = analyze(buf, full_cfg)
            if abs(full.bright_count - full.dark_count) < 0.10 * full.sample_count:
                continue
            used += 1
            agree += analyze(buf)[1] is oracle
        elapsed = time.perf_counter() - t0
        d["agreement"] = f"{agree}/{used}"
        d["seconds"] = f"{elapsed:.1f}"
        assert agree / used >= 0.95
        assert elapsed < 60


def test_5_corpus_reproduction(corpus_result):
    reports, summary, elapsed = corpus_result
    with criterion(5, "synthetic 30-screen corpus approximates the reported darkening") as d:
        beats = summary.wins["combined<redshift"] / summary.count
        d.update(count=summary.count, mean_default=f"{summary.mean_apl['default']:.3f}",
                 smartnight=f"{summary.mean_reduction['smartnight']:.3f}",
                 combined=f"{summary.mean_reduction['combined']:.3f}", beats_redshift=f"{beats:.3f}")
        assert summary.count == 30
        assert abs(summary.mean_apl["default"] - 0.75) <= 0.02
        assert 0.62 <= summary.mean_reduction["smartnight"] <= 0.82
        assert summary.mean_reduction["combined"] >= 0.85
        assert beats >= 0.90
        assert elapsed < 30


def test_6_flicker_scenarios():
    with criterion(6, "flicker: 9 flips default, 0 with video heuristic, letterbox always preserved") as d:
        t0 = time.perf_counter()
        plain = run_scenario(flicker_scene())
        guarded = run_scenario(flicker_scene(), options=ScenarioOptions(video_heuristic=True))
        boxed_scene = letterbox_scene()
        boxed = run_scenario(boxed_scene)
        elapsed = time.perf_counter() - t0
        d.update(default=plain.flicker.flips["video"], heuristic=guarded.flicker.flips["video"])
        assert len(plain.frames) == 10
        assert plain.flicker.flips["video"] == 9
        assert guarded.flicker.flips["video"] == 0
        # every letterboxed frame is at least 60% black bars and analyzes as PRESERVE
        for ev in boxed_scene.events:
            if ev.image is not None:
                assert (ev.image.rgb() == 0).all(axis=2).mean() >= 0.6
                assert analyze(ev.image)[1] is Decision.PRESERVE
        assert boxed_scene.layers["video"].decision is Decision.PRESERVE
        assert not any(f.transformed["video"] for f in boxed.frames)
        assert boxed.flicker.flips["video"] == 0
        assert elapsed < 5


def test_7_first_frame_flash():
    with criterion(7, "first-frame flash present without analyze_on_create, absent with it") as d:
        off = run_scenario(static_bright_scene())
        on = run_scenario(static_bright_scene(), options=ScenarioOptions(analyze_on_create=True))
        flashes_off = sum(not f.transformed["app"] for f in off.frames)
        flashes_on = sum(not f.transformed["app"] for f in on.frames)
        d.update(off=flashes_off, on=flashes_on)
        assert flashes_off >= 1
        assert flashes_on == 0


def nearest_rank_oracle(values, p):
    """Smallest value v with at least p% of the data <= v."""
    for v in sorted(values):
        if sum(x <= v for x in values) * 100 >= p * len(values):
            return v


def test_8_frame_stats_oracle():
    with criterion(8, "FrameStats matches brute-force nearest-rank on 200 lists"):
        rng = np.random.default_rng(8)
        for _ in range(200):
            n = int(rng.integers(1, 300))
            durations = [round(float(v), 2) for v in rng.gamma(2.0, 8.0, n)]
            threshold = float(rng.choice([16.67, 33.3, 8.0]))
            s = frame_stats(durations, threshold)
            assert s.frames == n
            assert s.janky_fraction == sum(d > threshold for d in durations) / n
            assert [s.p50, s.p90, s.p95, s.p99] == [nearest_rank_oracle(durations, p) for p in (50, 90, 95, 99)]
            assert s.p50 <= s.p90 <= s.p95 <= s.p99


def test_9_performance(corpus_result):
    with criterion(9, "SAMPLED 1080x1920 analysis < 5 ms, corpus report < 30 s") as d:
        buf = layout_image(np.random.default_rng(9), 1080, 1920)
        _positions.cache_clear()
        t0 = time.perf_counter()
        analyze(buf)
        cold = time.perf_counter() - t0
        runs = []
        for _ in range(50):
            t0 = time.perf_counter()
            analyze(buf)
            runs.append(time.perf_counter() - t0)
        warm = statistics.median(runs)
        d.update(cold_ms=f"{cold * 1e3:.2f}", median_ms=f"{warm * 1e3:.2f}",
                 corpus_s=f"{corpus_result[2]:.2f}")
        assert cold < 0.005
        assert warm < 0.005
        assert corpus_result[2] < 30
