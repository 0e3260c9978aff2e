"""Content-aware darkening of bright-dominant images and layers."""

from .analysis import (AnalysisConfig, Brightness, Decision, LuminanceStats, Strategy,
                       analyze, analyze_background, classify, luminance, sample_positions)
from .imagebuf import (Color, ImageBuffer, ImageInputError, PixelFormat, decode_pixel,
                       encode_pixel, load_image, save_image)
from .metrics import (AplReport, CorpusSummary, apl, corpus_report, darkening, scheme_apl)
from .transform import (ColorMatrix, TransformScheme, apply, compose, inversion_matrix,
                        redshift_matrix, scheme_transform)

__all__ = [
    "AnalysisConfig", "Brightness", "Decision", "LuminanceStats", "Strategy", "analyze",
    "analyze_background", "classify", "luminance", "sample_positions",
    "Color", "ImageBuffer", "ImageInputError", "PixelFormat", "decode_pixel", "encode_pixel",
    "load_image", "save_image",
    "AplReport", "CorpusSummary", "apl", "corpus_report", "darkening", "scheme_apl",
    "ColorMatrix", "TransformScheme", "apply", "compose", "inversion_matrix",
    "redshift_matrix", "scheme_transform",
]
