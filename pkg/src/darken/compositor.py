"""Layer compositor simulator.

Models the latch / invalidate life cycle of a display compositor: producers
submit buffers to layers (latching them), an invalidate on a latched layer
triggers content analysis and caches the decision, and each composed frame
draws the layers bottom-to-top, running transformed layers through their
color matrix. The simulator also counts decision flips per layer and turns
simulated render durations into frame statistics.
"""

from __future__ import annotations

import enum
import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .analysis import AnalysisConfig, Decision, analyze
from .imagebuf import ImageBuffer, ImageInputError, load_image, save_image
from .transform import ColorMatrix, TransformScheme, inversion_matrix, scheme_transform, transform_rgb

DEFAULT_JANK_MS = 1000.0 / 60.0
DEFAULT_VIDEO_WINDOW_MS = 1000.0
DEFAULT_VIDEO_MIN_UPDATES = 15
PERCENTILES = (50, 90, 95, 99)


class SceneError(ValueError):
    """Malformed scene or schedule, or an operation on an unknown layer."""


class EmptySceneError(SceneError):
    pass


class EventKind(enum.Enum):
    SUBMIT = "submit"
    INVALIDATE = "invalidate"
    COMPOSE = "compose"


@dataclass
class Layer:
    id: str
    z: int = 0
    buffer: ImageBuffer | None = None
    latched: bool = False
    decision: Decision | None = None
    transform: ColorMatrix | None = None
    timestamps: list[float] = field(default_factory=list)

    @property
    def matrix(self) -> ColorMatrix:
        return self.transform if self.transform is not None else inversion_matrix()


@dataclass(frozen=True)
class SceneEvent:
    t_ms: float
    kind: EventKind
    layer: str | None = None
    image: ImageBuffer | None = None
    duration_ms: float | None = None


@dataclass
class Scene:
    width: int
    height: int
    layers: dict[str, Layer] = field(default_factory=dict)
    events: list[SceneEvent] = field(default_factory=list)

    def add_layer(self, id: str, z: int = 0, transform: ColorMatrix | None = None) -> Layer:
        if id in self.layers:
            raise SceneError(f"duplicate layer id {id!r}")
        layer = Layer(id, z, transform=transform)
        self.layers[id] = layer
        return layer

    def layer(self, id: str) -> Layer:
        try:
            return self.layers[id]
        except KeyError:
            raise SceneError(f"unknown layer {id!r}") from None

    def validate(self) -> None:
        prev = -math.inf
        for i, ev in enumerate(self.events):
            if ev.t_ms < prev:
                raise SceneError(f"event {i}: time {ev.t_ms} ms precedes previous event at {prev} ms")
            prev = ev.t_ms
            if ev.kind is not EventKind.COMPOSE:
                if ev.layer not in self.layers:
                    raise SceneError(f"event {i}: unknown layer {ev.layer!r}")
            if ev.kind is EventKind.SUBMIT:
                if ev.image is None:
                    raise SceneError(f"event {i}: submit without an image")
                if (ev.image.width, ev.image.height) != (self.width, self.height):
                    raise SceneError(
                        f"event {i}: image is {ev.image.width}x{ev.image.height}, "
                        f"canvas is {self.width}x{self.height}")
            if ev.duration_ms is not None and ev.duration_ms < 0:
                raise SceneError(f"event {i}: negative duration")


@dataclass(frozen=True)
class FrameStats:
    frames: int
    janky_fraction: float
    p50: float
    p90: float
    p95: float
    p99: float

    def to_dict(self) -> dict:
        return {"frames": self.frames, "janky_fraction": self.janky_fraction,
                "p50": self.p50, "p90": self.p90, "p95": self.p95, "p99": self.p99}


@dataclass
class FlickerRecord:
    flips: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class Frame:
    index: int
    t_ms: float
    image: ImageBuffer
    transformed: dict[str, bool]
    duration_ms: float


@dataclass(frozen=True)
class ScenarioOptions:
    analyze_on_create: bool = False
    video_heuristic: bool = False
    video_window_ms: float = DEFAULT_VIDEO_WINDOW_MS
    video_min_updates: int = DEFAULT_VIDEO_MIN_UPDATES
    jank_threshold_ms: float = DEFAULT_JANK_MS


@dataclass
class ScenarioResult:
    frames: list[Frame]
    stats: FrameStats | None
    flicker: FlickerRecord

    def stats_dict(self) -> dict:
        out = self.stats.to_dict() if self.stats else {
            "frames": len(self.frames), "janky_fraction": None,
            "p50": None, "p90": None, "p95": None, "p99": None}
        out["flips_per_layer"] = dict(sorted(self.flicker.flips.items()))
        return out


def video_heuristic(timestamps: Sequence[float], window_ms: float = DEFAULT_VIDEO_WINDOW_MS,
                    min_updates: int = DEFAULT_VIDEO_MIN_UPDATES,
                    now: float | None = None) -> bool:
    """Guess whether a layer is playing video from how often it updates.

    Without ``now``: true iff some closed window of ``window_ms`` holds at
    least ``min_updates`` timestamps. With ``now``: only the trailing window
    ``[now - window_ms, now]`` counts, so the verdict lapses once updates slow.
    """
    if min_updates <= 0:
        return True
    ts = list(timestamps)
    if len(ts) < min_updates:
        return False
    if now is not None:
        return bisect_right(ts, now) - bisect_left(ts, now - window_ms) >= min_updates
    # window starting at ts[i] is the densest one containing ts[i] as its earliest point
    return any(ts[i + min_updates - 1] - ts[i] <= window_ms
               for i in range(len(ts) - min_updates + 1))


def nearest_rank(sorted_values: Sequence[float], p: int) -> float:
    n = len(sorted_values)
    rank = max(1, (p * n + 99) // 100)
    return sorted_values[rank - 1]


def frame_stats(durations: Sequence[float], jank_threshold_ms: float = DEFAULT_JANK_MS) -> FrameStats:
    """Janky fraction (frames slower than the threshold) and nearest-rank percentiles."""
    if len(durations) == 0:
        raise ValueError("frame_stats needs at least one duration")
    ordered = sorted(durations)
    janky = sum(d > jank_threshold_ms for d in ordered) / len(ordered)
    p = [nearest_rank(ordered, q) for q in PERCENTILES]
    return FrameStats(len(ordered), janky, *p)


def submit_buffer(scene: Scene, layer_id: str, buf: ImageBuffer, t_ms: float = 0.0) -> None:
    layer = scene.layer(layer_id)
    layer.buffer = buf
    layer.latched = True
    layer.timestamps.append(t_ms)


def _is_video(layer: Layer, options: ScenarioOptions, now: float) -> bool:
    return options.video_heuristic and video_heuristic(
        layer.timestamps, options.video_window_ms, options.video_min_updates, now=now)


def handle_invalidate(scene: Scene, layer_id: str, cfg: AnalysisConfig = AnalysisConfig(),
                      options: ScenarioOptions | None = None,
                      now: float | None = None) -> Decision | None:
    """Analyze a latched layer and cache the decision; a no-op otherwise."""
    layer = scene.layer(layer_id)
    if not layer.latched:
        return None
    layer.latched = False
    if options is not None and _is_video(layer, options,
                                         now if now is not None else layer.timestamps[-1]):
        layer.decision = Decision.PRESERVE
    else:
        _, layer.decision = analyze(layer.buffer, cfg)
    return layer.decision


def _draw_order(scene: Scene) -> list[Layer]:
    return sorted((l for l in scene.layers.values() if l.buffer is not None),
                  key=lambda l: (l.z, l.id))


def compose(scene: Scene, cfg: AnalysisConfig | None = None) -> ImageBuffer:
    """Source-over blend every layer with a buffer onto an opaque black canvas.

    ``cfg`` is accepted for symmetry with the rest of the pipeline; decisions
    come from each layer's cache, never from fresh analysis.
    """
    image, _ = _compose(scene)
    return image


def _compose(scene: Scene) -> tuple[ImageBuffer, dict[str, bool]]:
    layers = _draw_order(scene)
    if not layers:
        raise EmptySceneError("no layer holds a buffer")
    # snapshot decisions before drawing anything
    plan = [(l, l.decision is Decision.TRANSFORM, l.matrix) for l in layers]
    canvas = np.zeros((scene.height, scene.width, 3), dtype=np.float64)
    for layer, transformed, matrix in plan:
        src = layer.buffer.rgba()
        rgb = src[..., :3]
        if transformed:
            rgb = transform_rgb(rgb, matrix)
        alpha = src[..., 3:4].astype(np.float64) / 255.0
        canvas = rgb * alpha + canvas * (1.0 - alpha)
    out = np.empty((scene.height, scene.width, 4), dtype=np.uint8)
    out[..., :3] = np.floor(np.clip(canvas, 0, 255) + 0.5).astype(np.uint8)
    out[..., 3] = 255
    return ImageBuffer.from_rgba(out), {l.id: t for l, t, _ in plan}


def run_scenario(scene: Scene, cfg: AnalysisConfig = AnalysisConfig(),
                 options: ScenarioOptions = ScenarioOptions()) -> ScenarioResult:
    """Replay the scene's schedule in time order and collect frames and statistics."""
    scene.validate()
    frames: list[Frame] = []
    flips: dict[str, int] = {}
    prev: dict[str, bool] = {}
    for ev in scene.events:
        if ev.kind is EventKind.SUBMIT:
            layer = scene.layer(ev.layer)
            first = layer.buffer is None
            submit_buffer(scene, ev.layer, ev.image, ev.t_ms)
            if first and options.analyze_on_create:
                handle_invalidate(scene, ev.layer, cfg, options, now=ev.t_ms)
        elif ev.kind is EventKind.INVALIDATE:
            handle_invalidate(scene, ev.layer, cfg, options, now=ev.t_ms)
        else:
            image, transformed = _compose(scene)
            for lid, t in transformed.items():
                flips.setdefault(lid, 0)
                if lid in prev and prev[lid] != t:
                    flips[lid] += 1
            prev = transformed
            frames.append(Frame(len(frames), ev.t_ms, image, transformed, ev.duration_ms or 0.0))
    durations = [f.duration_ms for f in frames]
    stats = frame_stats(durations, options.jank_threshold_ms) if durations else None
    return ScenarioResult(frames, stats, FlickerRecord(flips))


def load_scene(path: str | Path) -> Scene:
    """Read a JSON scene file; image paths resolve relative to the file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except FileNotFoundError:
        raise SceneError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise SceneError(f"{path}: invalid JSON ({exc})") from None
    try:
        scene = Scene(int(doc["canvas"]["width"]), int(doc["canvas"]["height"]))
        for spec in doc["layers"]:
            m = None
            if spec.get("transform"):
                m = scheme_transform(TransformScheme(spec["transform"]))
            scene.add_layer(str(spec["id"]), int(spec.get("z", 0)), m)
    except (KeyError, TypeError, ValueError) as exc:
        raise SceneError(f"{path}: bad canvas/layers section ({exc})") from None
    cache: dict[Path, ImageBuffer] = {}
    for i, raw in enumerate(doc.get("events", [])):
        try:
            kind = EventKind(raw["kind"])
            t = float(raw["t_ms"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SceneError(f"event {i}: malformed ({exc})") from None
        image = None
        if kind is EventKind.SUBMIT:
            if "image" not in raw:
                raise SceneError(f"event {i}: submit without an image")
            ipath = (path.parent / raw["image"]).resolve()
            if ipath not in cache:
                try:
                    cache[ipath] = load_image(ipath)
                except ImageInputError as exc:
                    raise SceneError(f"event {i}: {exc}") from None
            image = cache[ipath]
        duration = raw.get("duration_ms")
        scene.events.append(SceneEvent(t, kind, raw.get("layer"), image,
                                       None if duration is None else float(duration)))
    scene.validate()
    return scene


def write_trace(result: ScenarioResult, stats_path: str | Path,
                frames_dir: str | Path | None = None) -> None:
    Path(stats_path).write_text(json.dumps(result.stats_dict(), indent=2, sort_keys=True) + "\n")
    if frames_dir is not None:
        frames_dir = Path(frames_dir)
        frames_dir.mkdir(parents=True, exist_ok=True)
        for f in result.frames:
            save_image(f.image, frames_dir / f"frame_{f.index:05d}.png")
