"""
=================================
Deciding whether a screen is bright
=================================

A screen is judged by sampling about 2500 pixels on a staggered grid,
scoring each with the luminance ``3r + 4g + b`` (0..2040) and counting how
many fall at or above 60% of full white versus at or below 40%.
"""
import numpy as np

from darken import AnalysisConfig, Strategy, analyze, sample_positions
from darken.synth import app_screenshot

###############################################################################
# A synthetic phone screen: light background, dark text, a colored app bar.
screen = app_screenshot(0)
print(f"screen: {screen.width}x{screen.height} {screen.format.value}")

###############################################################################
# The sampler walks rows with a quarter-stride phase shift per row, so narrow
# vertical features (a scroll bar, justified text) are not over- or
# under-counted.
positions = sample_positions(screen.width, screen.height, 2500)
rows = sorted({y for _, y in positions})
starts = [min(x for x, y in positions if y == row) for row in rows[:4]]
print(f"{len(positions)} sample positions in {len(rows)} rows; first x of rows 0-3: {starts}")

###############################################################################
# Sampled analysis versus scanning every pixel.
for strategy in Strategy:
    stats, decision = analyze(screen, AnalysisConfig(strategy=strategy))
    print(f"{strategy.value:>10}: bright={stats.bright_count:6d} dark={stats.dark_count:6d} "
          f"mid={stats.mid_count:5d} n={stats.sample_count:6d} -> {decision.value}")

###############################################################################
# A dark-themed screen is left alone.
night = app_screenshot(7)
print("dark-themed screen ->", analyze(night)[1].value)

###############################################################################
# Thresholds are configurable; raising the bright floor above the background
# luminance flips the verdict.
strict = AnalysisConfig(bright_floor=0.99, dark_ceiling=0.4)
print("bright floor 0.99 ->", analyze(screen, strict)[1].value)
