"""Deterministic synthetic content: app-screenshot corpus and compositor scenes.

The corpus mimics phone UI captures: light backgrounds, rows of dark text
glyphs, colored app bars and buttons, photo thumbnails, plus a couple of
dark-themed screens. Scene builders produce the flicker, letterbox and
first-frame fixtures used by the tests and demos.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .compositor import EventKind, Scene, SceneEvent
from .imagebuf import ImageBuffer, save_image

SCREEN_W, SCREEN_H = 360, 640
CORPUS_SIZE = 30
CORPUS_SEED = 2019
DARK_THEMED = (7, 22)

ACCENTS = [
    (33, 150, 243), (0, 150, 136), (244, 67, 54), (103, 58, 183), (76, 175, 80),
    (255, 152, 0), (63, 81, 181), (233, 30, 99), (0, 188, 212), (121, 85, 72),
]


def _rect(img: np.ndarray, x0: int, y0: int, x1: int, y1: int, color) -> None:
    img[max(y0, 0):max(y1, 0), max(x0, 0):max(x1, 0), :3] = color


def _text_line(img, rng, x0, y, width, height, color, density=0.45) -> None:
    """Glyph-like marks: words of narrow strokes with gaps."""
    x = x0
    end = x0 + width
    while x < end:
        word = int(rng.integers(3, 9))
        for _ in range(word):
            gw = int(rng.integers(3, 7))
            if x + gw > end:
                return
            glyph = rng.random((height, gw)) < density
            region = img[y:y + height, x:x + gw, :3]
            region[glyph] = color
            x += gw + 1
        x += int(rng.integers(4, 8))


def _photo(img, rng, x0, y0, w, h) -> None:
    """Smooth mid-tone gradient with noise, standing in for a thumbnail."""
    base = rng.integers(40, 200, size=3)
    tilt = rng.integers(-80, 80, size=3)
    yy, xx = np.mgrid[0:h, 0:w]
    ramp = (xx / max(w - 1, 1) + yy / max(h - 1, 1)) / 2
    block = base + ramp[..., None] * tilt + rng.normal(0, 12, size=(h, w, 3))
    img[y0:y0 + h, x0:x0 + w, :3] = np.clip(block, 0, 255).astype(np.uint8)


def app_screenshot(index: int, seed: int = CORPUS_SEED) -> ImageBuffer:
    """One synthetic UI screen; ``index`` picks layout, accent and theme."""
    rng = np.random.default_rng([seed, index])
    dark = index in DARK_THEMED
    img = np.zeros((SCREEN_H, SCREEN_W, 4), dtype=np.uint8)
    img[..., 3] = 255
    bg = (18, 18, 18) if dark else tuple(int(v) for v in rng.integers(246, 256, size=1).repeat(3))
    ink = (224, 224, 224) if dark else (33, 33, 33)
    secondary = (158, 158, 158) if dark else (97, 97, 97)
    img[..., :3] = bg
    accent = ACCENTS[index % len(ACCENTS)]
    shade = tuple(int(c * 0.8) for c in accent)

    _rect(img, 0, 0, SCREEN_W, 24, shade)                       # status bar
    _rect(img, 0, 24, SCREEN_W, 80, (33, 33, 33) if dark else accent)  # app bar
    _text_line(img, rng, 16, 44, 140, 14, (255, 255, 255), 0.7)

    layout = index % 3
    y = 96
    while y < SCREEN_H - 100:
        if layout == 0:                                          # message list
            avatar = tuple(int(v) for v in rng.integers(60, 230, size=3))
            _rect(img, 16, y + 6, 56, y + 46, avatar)
            _text_line(img, rng, 72, y + 8, int(rng.integers(120, 260)), 12, ink)
            _text_line(img, rng, 72, y + 28, int(rng.integers(150, 270)), 10, secondary, 0.4)
            y += 64
        elif layout == 1:                                        # article
            for _ in range(int(rng.integers(3, 7))):
                _text_line(img, rng, 16, y, SCREEN_W - 32 - int(rng.integers(0, 60)), 10, ink, 0.4)
                y += 20
            if rng.random() < 0.4 and y < SCREEN_H - 260:
                _photo(img, rng, 16, y + 8, SCREEN_W - 32, 120)
                y += 136
            y += 12
        else:                                                    # settings rows
            _text_line(img, rng, 16, y + 12, int(rng.integers(80, 200)), 12, ink)
            if rng.random() < 0.3:
                _rect(img, SCREEN_W - 64, y + 12, SCREEN_W - 20, y + 32, accent)
            _rect(img, 16, y + 47, SCREEN_W - 16, y + 48, (60, 60, 60) if dark else (224, 224, 224))
            y += 48

    cx, cy, r = SCREEN_W - 48, SCREEN_H - 112, 28              # floating button
    yy, xx = np.ogrid[:SCREEN_H, :SCREEN_W]
    img[(xx - cx) ** 2 + (yy - cy) ** 2 <= r * r, :3] = accent
    _rect(img, 0, SCREEN_H - 40, SCREEN_W, SCREEN_H, (0, 0, 0))  # navigation bar
    return ImageBuffer.from_rgba(img)


def app_corpus(n: int = CORPUS_SIZE, seed: int = CORPUS_SEED) -> list[tuple[str, ImageBuffer]]:
    return [(f"screen_{i:02d}", app_screenshot(i, seed)) for i in range(n)]


def write_corpus(directory: str | Path, n: int = CORPUS_SIZE, seed: int = CORPUS_SEED) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for ident, buf in app_corpus(n, seed):
        p = directory / f"{ident}.png"
        save_image(buf, p)
        paths.append(p)
    return paths


def solid(width: int, height: int, rgb, alpha: int = 255) -> ImageBuffer:
    img = np.empty((height, width, 4), dtype=np.uint8)
    img[..., :3] = rgb
    img[..., 3] = alpha
    return ImageBuffer.from_rgba(img)


def _durations(rng: np.random.Generator, n: int) -> list[float]:
    return [round(float(d), 3) for d in rng.gamma(3.0, 5.0, size=n)]


def _status_bar(width: int, height: int) -> ImageBuffer:
    img = np.zeros((height, width, 4), dtype=np.uint8)
    img[: max(1, height // 16), :, :3] = 25
    img[: max(1, height // 16), :, 3] = 255
    return ImageBuffer.from_rgba(img)


def flicker_scene(frames: int = 10, preroll: int = 15, width: int = 64, height: int = 64,
                  period_ms: float = 1000 / 30, seed: int = 7) -> Scene:
    """Video layer alternating bright and dark frames under a static status bar.

    ``preroll`` buffers are queued by the decoder before the first composed
    frame, so playback is already running at full rate when measurement begins.
    """
    rng = np.random.default_rng(seed)
    scene = Scene(width, height)
    scene.add_layer("video", 0)
    scene.add_layer("statusbar", 1)
    bright = solid(width, height, (235, 235, 235))
    dark = solid(width, height, (20, 20, 20))
    t = 0.0
    scene.events.append(SceneEvent(t, EventKind.SUBMIT, "statusbar", _status_bar(width, height)))
    scene.events.append(SceneEvent(t, EventKind.INVALIDATE, "statusbar"))
    for i in range(preroll):
        scene.events.append(SceneEvent(t, EventKind.SUBMIT, "video", dark if i % 2 else bright))
        t += period_ms
    for i, d in enumerate(_durations(rng, frames)):
        scene.events.append(SceneEvent(t, EventKind.SUBMIT, "video", bright if i % 2 == 0 else dark))
        scene.events.append(SceneEvent(t + 1, EventKind.INVALIDATE, "video"))
        scene.events.append(SceneEvent(t + 2, EventKind.COMPOSE, duration_ms=d))
        t += period_ms
    return scene


def letterboxed_frame(width: int, height: int, content_rgb, bar_fraction: float = 0.6) -> ImageBuffer:
    """Content band centred between black bars covering ``bar_fraction`` of the rows."""
    img = np.zeros((height, width, 4), dtype=np.uint8)
    img[..., 3] = 255
    bar = int(np.ceil(height * bar_fraction / 2))
    img[bar:height - bar, :, :3] = content_rgb
    return ImageBuffer.from_rgba(img)


def letterbox_scene(frames: int = 10, width: int = 64, height: int = 64,
                    period_ms: float = 1000 / 30, seed: int = 11) -> Scene:
    """Portrait video: bright and dark shots alternate between fixed black bars."""
    rng = np.random.default_rng(seed)
    scene = Scene(width, height)
    scene.add_layer("video", 0)
    shots = [letterboxed_frame(width, height, (250, 250, 250)),
             letterboxed_frame(width, height, (30, 30, 30))]
    t = 0.0
    for i, d in enumerate(_durations(rng, frames)):
        scene.events.append(SceneEvent(t, EventKind.SUBMIT, "video", shots[i % 2]))
        scene.events.append(SceneEvent(t + 1, EventKind.INVALIDATE, "video"))
        scene.events.append(SceneEvent(t + 2, EventKind.COMPOSE, duration_ms=d))
        t += period_ms
    return scene


def static_bright_scene(frames_before_invalidate: int = 2, frames_after: int = 4,
                        width: int = 64, height: int = 64, period_ms: float = 1000 / 60) -> Scene:
    """A new bright layer that is composed before the producer's first invalidate."""
    scene = Scene(width, height)
    scene.add_layer("app", 0)
    scene.events.append(SceneEvent(0.0, EventKind.SUBMIT, "app", solid(width, height, (250, 250, 250))))
    t = period_ms
    for _ in range(frames_before_invalidate):
        scene.events.append(SceneEvent(t, EventKind.COMPOSE, duration_ms=8.0))
        t += period_ms
    scene.events.append(SceneEvent(t - period_ms / 2, EventKind.INVALIDATE, "app"))
    for _ in range(frames_after):
        scene.events.append(SceneEvent(t, EventKind.COMPOSE, duration_ms=8.0))
        t += period_ms
    return scene


def save_scene(scene: Scene, directory: str | Path, name: str = "scene") -> Path:
    """Write ``scene`` as a JSON scene file with its images as sibling PNGs."""
    directory = Path(directory)
    img_dir = directory / f"{name}_images"
    img_dir.mkdir(parents=True, exist_ok=True)
    names: dict[int, str] = {}
    events = []
    for ev in scene.events:
        raw: dict = {"t_ms": ev.t_ms, "kind": ev.kind.value}
        if ev.layer is not None:
            raw["layer"] = ev.layer
        if ev.image is not None:
            key = id(ev.image)
            if key not in names:
                names[key] = f"{img_dir.name}/img_{len(names):03d}.png"
                save_image(ev.image, directory / names[key])
            raw["image"] = names[key]
        if ev.duration_ms is not None:
            raw["duration_ms"] = ev.duration_ms
        events.append(raw)
    doc = {
        "canvas": {"width": scene.width, "height": scene.height},
        "layers": [{"id": l.id, "z": l.z} for l in scene.layers.values()],
        "events": events,
    }
    path = directory / f"{name}.json"
    path.write_text(json.dumps(doc, indent=2) + "\n")
    return path


def _class_color(rng: np.random.Generator, kind: str) -> np.ndarray:
    """Random RGB whose 3r+4g+b luminance lands in the requested class."""
    while True:
        c = rng.integers(0, 256, size=3)
        l = 3 * c[0] + 4 * c[1] + c[2]
        if (kind == "bright" and l >= 1224) or (kind == "dark" and l <= 816) or \
                (kind == "mid" and 816 < l < 1224):
            return c.astype(np.uint8)


def layout_image(rng: np.random.Generator, width: int = 1080, height: int = 1920) -> ImageBuffer:
    """Blocky UI-like frame: a background, panels, bars and thin rules of random classes."""
    img = np.empty((height, width, 4), dtype=np.uint8)
    img[..., 3] = 255
    kinds = ("bright", "dark", "mid")
    bg = kinds[int(rng.integers(0, 2))]
    img[..., :3] = _class_color(rng, bg)
    for _ in range(int(rng.integers(2, 25))):
        kind = kinds[int(rng.choice(3, p=[0.4, 0.4, 0.2]))]
        w = int(rng.integers(20, width + 1))
        h = int(rng.integers(10, height // 2))
        x0, y0 = int(rng.integers(0, width)), int(rng.integers(0, height))
        img[y0:y0 + h, x0:x0 + w, :3] = _class_color(rng, kind)
    for _ in range(int(rng.integers(0, 12))):  # thin vertical and horizontal rules
        c = _class_color(rng, kinds[int(rng.integers(0, 3))])
        if rng.random() < 0.5:
            x0 = int(rng.integers(0, width))
            img[:, x0:x0 + int(rng.integers(1, 6)), :3] = c
        else:
            y0 = int(rng.integers(0, height))
            img[y0:y0 + int(rng.integers(1, 6)), :, :3] = c
    return ImageBuffer.from_rgba(img)
