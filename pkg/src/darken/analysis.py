"""Content analysis: decide whether an image is bright-dominant.

Pixels are sampled on a staggered grid, reduced to a cheap weighted
luminance ``3r + 4g + b`` and binned against a bright floor and a dark
ceiling expressed as fractions of full white. If bright pixels strictly
outnumber dark ones the content should be transformed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .imagebuf import Color, ImageBuffer

WEIGHT_R, WEIGHT_G, WEIGHT_B = 3, 4, 1
FULL_WHITE = 255 * (WEIGHT_R + WEIGHT_G + WEIGHT_B)  # 2040

BLOCK_SIZE = 8
BLOCK_TOLERANCE = 8


class Strategy(enum.Enum):
    SAMPLED = "sampled"
    FULL_SCAN = "full"
    BACKGROUND = "background"


class Decision(enum.Enum):
    TRANSFORM = "TRANSFORM"
    PRESERVE = "PRESERVE"


class Brightness(enum.Enum):
    BRIGHT = "BRIGHT"
    DARK = "DARK"
    MID = "MID"


@dataclass(frozen=True)
class AnalysisConfig:
    target_samples: int = 2500
    bright_floor: float = 0.6
    dark_ceiling: float = 0.4
    strategy: Strategy = Strategy.SAMPLED

    def __post_init__(self) -> None:
        if self.target_samples < 1:
            raise ValueError(f"target_samples must be >= 1, got {self.target_samples}")
        if not 0 <= self.dark_ceiling < self.bright_floor <= 1:
            raise ValueError(
                "thresholds must satisfy 0 <= dark_ceiling < bright_floor <= 1, "
                f"got dark_ceiling={self.dark_ceiling}, bright_floor={self.bright_floor}")

    @property
    def bright_threshold(self) -> Fraction:
        """Bright floor in luminance units, as an exact rational."""
        return Fraction(str(self.bright_floor)) * FULL_WHITE

    @property
    def dark_threshold(self) -> Fraction:
        return Fraction(str(self.dark_ceiling)) * FULL_WHITE


@dataclass(frozen=True)
class LuminanceStats:
    bright_count: int
    dark_count: int
    mid_count: int
    sample_count: int
    max_r: int
    max_g: int
    max_b: int

    @property
    def decision(self) -> Decision:
        # ties preserve: bright must strictly outnumber dark
        if self.bright_count > self.dark_count:
            return Decision.TRANSFORM
        return Decision.PRESERVE


def luminance(c: Color) -> int:
    """Weighted luminance in ``[0, 2040]``; alpha is ignored."""
    return WEIGHT_R * c.r + WEIGHT_G * c.g + WEIGHT_B * c.b


def luminance_array(rgb: np.ndarray) -> np.ndarray:
    """Vectorized :func:`luminance` over an ``(..., 3)`` array in RGB order."""
    # 2040 fits in uint16; in-place ops keep full-frame scans cheap
    out = rgb[..., 0].astype(np.uint16)
    out *= WEIGHT_R
    g = rgb[..., 1].astype(np.uint16)
    g *= WEIGHT_G
    out += g
    out += rgb[..., 2]
    return out


def classify(l: int, cfg: AnalysisConfig = AnalysisConfig()) -> Brightness:
    """Bin a luminance value; both boundaries are inclusive."""
    if l >= cfg.bright_threshold:
        return Brightness.BRIGHT
    if l <= cfg.dark_threshold:
        return Brightness.DARK
    return Brightness.MID


def _thresholds(cfg: AnalysisConfig) -> tuple[int, int]:
    # integer cut points equivalent to the exact rational comparisons
    bright = math.ceil(cfg.bright_threshold)
    dark = math.floor(cfg.dark_threshold)
    return bright, dark


def _grid(width: int, height: int, target_samples: int) -> tuple[int, int, int]:
    """Columns per row and the two strides; rows * cols never exceeds the target."""
    rows = math.ceil(math.sqrt(target_samples))
    cols = max(1, target_samples // rows)
    return cols, max(1, math.ceil(width / cols)), max(1, math.ceil(height / rows))


@lru_cache(maxsize=64)
def _positions(width: int, height: int, target_samples: int) -> tuple[np.ndarray, np.ndarray]:
    cols, stride_x, stride_y = _grid(width, height, target_samples)
    xs, ys = [], []
    for k, y in enumerate(range(0, height, stride_y)):
        x0 = ((k % 4) * stride_x) // 4
        row = np.arange(x0, width, stride_x)[:cols]
        xs.append(row)
        ys.append(np.full(row.shape, y))
    x = np.concatenate(xs).astype(np.intp)
    y = np.concatenate(ys).astype(np.intp)
    x.flags.writeable = False
    y.flags.writeable = False
    return x, y


def sample_positions(width: int, height: int, target_samples: int = 2500) -> list[tuple[int, int]]:
    """Staggered-grid sample coordinates, row by row.

    Row ``k`` starts at a quarter-stride phase ``(k mod 4) * stride_x / 4`` so
    that consecutive rows do not line up on the same columns.
    """
    if width < 1 or height < 1:
        raise ValueError(f"invalid dimensions {width}x{height}")
    x, y = _positions(width, height, target_samples)
    return list(zip(x.tolist(), y.tolist()))


def _stats(rgb: np.ndarray, cfg: AnalysisConfig) -> LuminanceStats:
    lum = luminance_array(rgb)
    bright_t, dark_t = _thresholds(cfg)
    n = int(lum.size)
    bright = int(np.count_nonzero(lum >= bright_t))
    dark = int(np.count_nonzero(lum <= dark_t))
    maxima = [int(rgb[..., i].max()) for i in range(3)]
    return LuminanceStats(bright, dark, n - bright - dark, n, *maxima)


def analyze(buf: ImageBuffer, cfg: AnalysisConfig = AnalysisConfig()) -> tuple[LuminanceStats, Decision]:
    """Aggregate luminance classes over the strategy's pixel set and decide."""
    if cfg.strategy is Strategy.BACKGROUND:
        return analyze_background(buf, cfg)
    rgb = buf.rgb()
    if cfg.strategy is Strategy.SAMPLED:
        x, y = _positions(buf.width, buf.height, cfg.target_samples)
        rgb = rgb[y, x]
    stats = _stats(rgb, cfg)
    return stats, stats.decision


def analyze_background(buf: ImageBuffer,
                       cfg: AnalysisConfig = AnalysisConfig()) -> tuple[LuminanceStats, Decision]:
    """Count only pixels that look like a flat background.

    At every sample position a horizontal run of ``BLOCK_SIZE`` pixels is
    inspected; it contributes only if each pixel is within
    ``BLOCK_TOLERANCE`` per channel of the run's first pixel. Text, icons and
    photographic content fail that test and are skipped. With no uniform run
    anywhere, this degrades to plain sampling.
    """
    rgb = buf.rgb()
    x, y = _positions(buf.width, buf.height, cfg.target_samples)
    size = min(BLOCK_SIZE, buf.width)
    start = np.minimum(x, buf.width - size)
    cols = start[:, None] + np.arange(size)[None, :]
    blocks = rgb[y[:, None], cols].astype(np.int16)  # (n, size, 3)
    spread = np.abs(blocks - blocks[:, :1, :]).max(axis=(1, 2))
    uniform = spread <= BLOCK_TOLERANCE
    if not uniform.any():
        return analyze(buf, AnalysisConfig(cfg.target_samples, cfg.bright_floor,
                                           cfg.dark_ceiling, Strategy.SAMPLED))
    stats = _stats(blocks[uniform].astype(np.uint8), cfg)
    return stats, stats.decision
