import numpy as np
import pytest

from darken.imagebuf import ImageBuffer, PixelFormat

ACCEPTANCE_LINES: list[str] = []


def random_buffer(rng: np.random.Generator, fmt: PixelFormat | None = None,
                  max_side: int = 24) -> ImageBuffer:
    w, h = (int(v) for v in rng.integers(1, max_side + 1, size=2))
    fmt = fmt or list(PixelFormat)[int(rng.integers(0, 3))]
    return ImageBuffer(w, h, fmt, bytearray(rng.integers(0, 256, size=w * h * 4, dtype=np.uint8).tobytes()))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
