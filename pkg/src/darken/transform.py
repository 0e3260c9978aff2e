"""Affine color matrices and their application to image buffers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .imagebuf import Color, ImageBuffer


@dataclass(frozen=True, eq=False)
class ColorMatrix:
    """``out = linear @ rgb + offset`` on channels normalized to ``[0, 1]``.

    Alpha passes through untouched. Results are clamped to ``[0, 1]`` and
    re-quantized with round-half-up.
    """

    linear: np.ndarray = field(default_factory=lambda: np.eye(3))
    offset: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self) -> None:
        linear = np.array(self.linear, dtype=np.float64).reshape(3, 3)
        offset = np.array(self.offset, dtype=np.float64).reshape(3)
        if not (np.isfinite(linear).all() and np.isfinite(offset).all()):
            raise ValueError("color matrix coefficients must be finite")
        linear.flags.writeable = False
        offset.flags.writeable = False
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "offset", offset)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColorMatrix):
            return NotImplemented
        return bool(np.array_equal(self.linear, other.linear)
                    and np.array_equal(self.offset, other.offset))

    def __hash__(self) -> int:
        return hash((self.linear.tobytes(), self.offset.tobytes()))

    def isclose(self, other: "ColorMatrix", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.linear, other.linear, atol=atol)
                    and np.allclose(self.offset, other.offset, atol=atol))

    def __call__(self, c: Color) -> Color:
        return apply_color(self, c)


class TransformScheme(enum.Enum):
    DEFAULT = "default"
    INVERT = "invert"
    REDSHIFT = "redshift"
    INVERT_REDSHIFT = "invert-redshift"


def identity_matrix() -> ColorMatrix:
    return ColorMatrix()


def inversion_matrix() -> ColorMatrix:
    """Maps every channel ``v`` to ``1 - v``."""
    return ColorMatrix(-np.eye(3), np.ones(3))


def redshift_matrix() -> ColorMatrix:
    """Keeps red, zeroes green and blue."""
    return ColorMatrix(np.diag([1.0, 0.0, 0.0]), np.zeros(3))


def compose(second: ColorMatrix, first: ColorMatrix) -> ColorMatrix:
    """Matrix equivalent to applying ``first`` and then ``second``."""
    return ColorMatrix(second.linear @ first.linear,
                       second.linear @ first.offset + second.offset)


def _quantize(normalized: np.ndarray) -> np.ndarray:
    return np.floor(np.clip(normalized, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


def transform_rgb(rgb: np.ndarray, m: ColorMatrix) -> np.ndarray:
    """Map an ``(..., 3)`` uint8 RGB array through ``m``."""
    v = rgb.astype(np.float64) / 255.0
    return _quantize(v @ m.linear.T + m.offset)


def apply_color(m: ColorMatrix, c: Color) -> Color:
    r, g, b = transform_rgb(np.array([c.r, c.g, c.b], dtype=np.uint8), m).tolist()
    return Color(r, g, b, c.a)


def apply(buf: ImageBuffer, m: ColorMatrix) -> ImageBuffer:
    """New buffer with every pixel mapped through ``m``; the fourth byte is kept."""
    out = buf.copy()
    px = out.pixels()
    offsets = list(buf.format.rgb_offsets)
    px[..., offsets] = transform_rgb(px[..., offsets], m)
    return out


def scheme_transform(s: TransformScheme) -> ColorMatrix | None:
    """Matrix for a named scheme; the combined scheme inverts first, then red-shifts."""
    if s is TransformScheme.DEFAULT:
        return None
    if s is TransformScheme.INVERT:
        return inversion_matrix()
    if s is TransformScheme.REDSHIFT:
        return redshift_matrix()
    return compose(redshift_matrix(), inversion_matrix())
