"""Pixel-format-aware image buffers.

An :class:`ImageBuffer` holds raw 4-byte pixels in row-major order with a
top-left origin. The byte layout of each pixel is given by its
:class:`PixelFormat`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

BYTES_PER_PIXEL = 4


class ImageInputError(ValueError):
    """Raised when a raster file is missing, empty or cannot be decoded."""


class PixelFormat(enum.Enum):
    RGBA_8888 = "RGBA_8888"
    BGRA_8888 = "BGRA_8888"
    RGBX_8888 = "RGBX_8888"

    @property
    def rgb_offsets(self) -> tuple[int, int, int]:
        """Byte offsets of red, green and blue inside one pixel."""
        if self is PixelFormat.BGRA_8888:
            return (2, 1, 0)
        return (0, 1, 2)

    @property
    def has_alpha(self) -> bool:
        return self is not PixelFormat.RGBX_8888


@dataclass(frozen=True)
class Color:
    r: int
    g: int
    b: int
    a: int = 255

    def __post_init__(self) -> None:
        for name in ("r", "g", "b", "a"):
            v = getattr(self, name)
            if not 0 <= v <= 255:
                raise ValueError(f"channel {name}={v} outside [0, 255]")


@dataclass
class ImageBuffer:
    width: int
    height: int
    format: PixelFormat
    data: bytearray

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"invalid dimensions {self.width}x{self.height}")
        if not isinstance(self.data, bytearray):
            self.data = bytearray(self.data)
        expected = self.width * self.height * BYTES_PER_PIXEL
        if len(self.data) != expected:
            raise ValueError(f"data has {len(self.data)} bytes, expected {expected}")

    @classmethod
    def filled(cls, width: int, height: int, color: Color,
               format: PixelFormat = PixelFormat.RGBA_8888) -> "ImageBuffer":
        buf = cls(width, height, format, bytearray(width * height * BYTES_PER_PIXEL))
        px = buf.pixels()
        r, g, b = format.rgb_offsets
        px[..., r] = color.r
        px[..., g] = color.g
        px[..., b] = color.b
        px[..., 3] = color.a if format.has_alpha else 255
        return buf

    @classmethod
    def from_rgba(cls, rgba: np.ndarray,
                  format: PixelFormat = PixelFormat.RGBA_8888) -> "ImageBuffer":
        """Build a buffer from an ``(height, width, 4)`` uint8 array in RGBA order."""
        rgba = np.asarray(rgba, dtype=np.uint8)
        if rgba.ndim != 3 or rgba.shape[2] != 4:
            raise ValueError(f"expected (h, w, 4) array, got shape {rgba.shape}")
        h, w, _ = rgba.shape
        if format is PixelFormat.BGRA_8888:
            rgba = rgba[..., [2, 1, 0, 3]]
        return cls(w, h, format, bytearray(np.ascontiguousarray(rgba)))

    def pixels(self) -> np.ndarray:
        """Writable ``(height, width, 4)`` view of the raw bytes, in storage order."""
        return np.frombuffer(self.data, dtype=np.uint8).reshape(self.height, self.width, 4)

    def rgb(self) -> np.ndarray:
        """``(height, width, 3)`` view-or-copy of the color channels in RGB order."""
        px = self.pixels()
        if self.format is PixelFormat.BGRA_8888:
            return px[..., 2::-1]
        return px[..., :3]

    def rgba(self) -> np.ndarray:
        """Copy of the pixels in RGBA order; formats without alpha read as opaque."""
        out = np.empty((self.height, self.width, 4), dtype=np.uint8)
        out[..., :3] = self.rgb()
        out[..., 3] = self.pixels()[..., 3] if self.format.has_alpha else 255
        return out

    def copy(self) -> "ImageBuffer":
        return ImageBuffer(self.width, self.height, self.format, bytearray(self.data))

    def _offset(self, x: int, y: int) -> int:
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"pixel ({x}, {y}) outside {self.width}x{self.height} buffer")
        return (y * self.width + x) * BYTES_PER_PIXEL


def decode_pixel(buf: ImageBuffer, x: int, y: int) -> Color:
    """Read the pixel at ``(x, y)`` according to the buffer's byte layout."""
    base = buf._offset(x, y)
    px = buf.data[base:base + BYTES_PER_PIXEL]
    r, g, b = buf.format.rgb_offsets
    a = px[3] if buf.format.has_alpha else 255
    return Color(px[r], px[g], px[b], a)


def encode_pixel(buf: ImageBuffer, x: int, y: int, c: Color) -> None:
    """Write ``c`` at ``(x, y)``. RGBX buffers store 255 in the padding byte."""
    base = buf._offset(x, y)
    r, g, b = buf.format.rgb_offsets
    buf.data[base + r] = c.r
    buf.data[base + g] = c.g
    buf.data[base + b] = c.b
    buf.data[base + 3] = c.a if buf.format.has_alpha else 255


def load_image(path: str | Path) -> ImageBuffer:
    """Load a PNG (or any 8-bit raster Pillow reads) as an RGBA_8888 buffer."""
    path = Path(path)
    if not path.is_file():
        raise ImageInputError(f"{path}: no such file")
    if path.stat().st_size == 0:
        raise ImageInputError(f"{path}: file is empty")
    try:
        with Image.open(path) as im:
            im = im.convert("RGBA")
            arr = np.asarray(im, dtype=np.uint8)
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise ImageInputError(f"{path}: cannot decode image ({exc})") from exc
    return ImageBuffer.from_rgba(arr)


def save_image(buf: ImageBuffer, path: str | Path) -> None:
    """Write ``buf`` as an 8-bit RGBA PNG."""
    Image.fromarray(buf.rgba()).save(Path(path), format="PNG")
