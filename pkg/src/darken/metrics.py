"""Average Picture Level (APL) and corpus-level darkening reports.

APL is the mean weighted luminance of every pixel divided by full white, so
0 is an all-black frame and 1 an all-white one. It stands in for OLED panel
power, which grows as content approaches white.
"""

from __future__ import annotations

import csv
import itertools
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .analysis import FULL_WHITE, AnalysisConfig, Decision, analyze, luminance_array
from .imagebuf import ImageBuffer, ImageInputError, load_image
from .transform import TransformScheme, apply, inversion_matrix, redshift_matrix

logger = logging.getLogger(__name__)

SCHEMES = (TransformScheme.DEFAULT, TransformScheme.INVERT,
           TransformScheme.REDSHIFT, TransformScheme.INVERT_REDSHIFT)
SCHEME_KEYS = {
    TransformScheme.DEFAULT: "default",
    TransformScheme.INVERT: "smartnight",
    TransformScheme.REDSHIFT: "redshift",
    TransformScheme.INVERT_REDSHIFT: "combined",
}
CSV_HEADER = ["id", "apl_default", "apl_smartnight", "apl_redshift", "apl_combined",
              "decision", "red_smartnight", "red_redshift", "red_combined"]


class UndefinedReductionError(ZeroDivisionError):
    """Relative darkening is undefined for an all-black default image."""


class CorpusError(ValueError):
    pass


def apl(buf: ImageBuffer) -> float:
    """Full-scan APL in ``[0, 1]``."""
    total = int(luminance_array(buf.rgb()).sum(dtype=np.uint64))
    return total / (buf.width * buf.height * FULL_WHITE)


def smartnight(buf: ImageBuffer, cfg: AnalysisConfig = AnalysisConfig()) -> tuple[ImageBuffer, Decision]:
    """Invert ``buf`` only if analysis finds it bright-dominant."""
    _, decision = analyze(buf, cfg)
    if decision is Decision.TRANSFORM:
        return apply(buf, inversion_matrix()), decision
    return buf, decision


def render_scheme(buf: ImageBuffer, s: TransformScheme,
                  cfg: AnalysisConfig = AnalysisConfig()) -> ImageBuffer:
    """The image as shown under a scheme: inversion is analysis-gated, red-shift is not."""
    if s is TransformScheme.DEFAULT:
        return buf
    if s is TransformScheme.REDSHIFT:
        return apply(buf, redshift_matrix())
    out, _ = smartnight(buf, cfg)
    if s is TransformScheme.INVERT_REDSHIFT:
        out = apply(out, redshift_matrix())
    return out


def scheme_apl(buf: ImageBuffer, s: TransformScheme,
               cfg: AnalysisConfig = AnalysisConfig()) -> float:
    return apl(render_scheme(buf, s, cfg))


def darkening(apl_default: float, apl_scheme: float) -> float:
    """Fractional APL reduction relative to the default image (negative if brighter)."""
    if apl_default <= 0:
        raise UndefinedReductionError("default APL is 0; reduction is not applicable")
    return (apl_default - apl_scheme) / apl_default


@dataclass(frozen=True)
class AplReport:
    id: str
    apl_default: float
    apl_smartnight: float
    apl_redshift: float
    apl_combined: float
    decision: Decision

    def apl_for(self, key: str) -> float:
        return getattr(self, f"apl_{key}")

    def reduction(self, key: str) -> float | None:
        """``None`` when the default image is pure black."""
        try:
            return darkening(self.apl_default, self.apl_for(key))
        except UndefinedReductionError:
            return None

    @property
    def reductions(self) -> dict[str, float | None]:
        return {k: self.reduction(k) for k in ("smartnight", "redshift", "combined")}


@dataclass
class CorpusSummary:
    count: int
    mean_apl: dict[str, float]
    mean_reduction: dict[str, float | None]
    wins: dict[str, int]
    ties: dict[str, int]
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "mean_apl": {k: round(v, 6) for k, v in self.mean_apl.items()},
            "mean_reduction": {k: None if v is None else round(v, 6)
                               for k, v in self.mean_reduction.items()},
            "wins": self.wins,
            "ties": self.ties,
            "warnings": self.warnings,
        }


def image_report(ident: str, buf: ImageBuffer, cfg: AnalysisConfig = AnalysisConfig()) -> AplReport:
    out, decision = smartnight(buf, cfg)
    red = redshift_matrix()
    return AplReport(
        id=ident,
        apl_default=apl(buf),
        apl_smartnight=apl(out),
        apl_redshift=apl(apply(buf, red)),
        apl_combined=apl(apply(out, red)),
        decision=decision,
    )


def summarize(reports: list[AplReport], warnings: Iterable[str] = ()) -> CorpusSummary:
    if not reports:
        raise CorpusError("no images to summarize")
    keys = list(SCHEME_KEYS.values())
    mean_apl = {k: float(np.mean([r.apl_for(k) for r in reports])) for k in keys}
    mean_reduction: dict[str, float | None] = {}
    for k in keys[1:]:
        vals = [r.reduction(k) for r in reports if r.reduction(k) is not None]
        mean_reduction[k] = float(np.mean(vals)) if vals else None
    wins, ties = {}, {}
    for a, b in itertools.permutations(keys, 2):
        wins[f"{a}<{b}"] = sum(r.apl_for(a) < r.apl_for(b) for r in reports)
    for a, b in itertools.combinations(keys, 2):
        ties[f"{a}={b}"] = sum(r.apl_for(a) == r.apl_for(b) for r in reports)
    return CorpusSummary(len(reports), mean_apl, mean_reduction, wins, ties, list(warnings))


CorpusItem = tuple[str, Union[ImageBuffer, str, Path]]


def corpus_report(items: Iterable[CorpusItem],
                  cfg: AnalysisConfig = AnalysisConfig()) -> tuple[list[AplReport], CorpusSummary]:
    """Per-image reports for all four schemes, sorted by identifier, plus aggregates.

    Items may carry a buffer or a path; unreadable paths are skipped with a
    warning recorded in the summary.
    """
    reports, warnings = [], []
    for ident, src in sorted(items, key=lambda it: it[0]):
        if not isinstance(src, ImageBuffer):
            try:
                src = load_image(src)
            except ImageInputError as exc:
                msg = f"skipped {ident}: {exc}"
                logger.warning(msg)
                warnings.append(msg)
                continue
        reports.append(image_report(ident, src, cfg))
    if not reports:
        raise CorpusError("corpus contains no readable images")
    return reports, summarize(reports, warnings)


def corpus_from_dir(directory: str | Path,
                    patterns: tuple[str, ...] = ("*.png",)) -> list[CorpusItem]:
    directory = Path(directory)
    if not directory.is_dir():
        raise CorpusError(f"{directory}: not a directory")
    paths = sorted({p for pat in patterns for p in directory.glob(pat) if p.is_file()})
    if not paths:
        raise CorpusError(f"{directory}: no images found")
    return [(p.name, p) for p in paths]


def _fmt(v: float | None) -> str:
    return "NA" if v is None else f"{v:.6f}"


def write_csv(reports: list[AplReport], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in reports:
            red = r.reductions
            w.writerow([r.id, _fmt(r.apl_default), _fmt(r.apl_smartnight), _fmt(r.apl_redshift),
                        _fmt(r.apl_combined), r.decision.value,
                        _fmt(red["smartnight"]), _fmt(red["redshift"]), _fmt(red["combined"])])


def write_summary(summary: CorpusSummary, path: str | Path) -> None:
    Path(path).write_text(json.dumps(summary.to_dict(), indent=2, sort_keys=True) + "\n")
