"""Command-line interface: analyze, darken, apl, corpus, simulate."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .analysis import AnalysisConfig, Strategy, analyze
from .compositor import SceneError, ScenarioOptions, load_scene, run_scenario, write_trace
from .imagebuf import ImageInputError, load_image, save_image
from .metrics import CorpusError, corpus_from_dir, corpus_report, render_scheme, scheme_apl, write_csv, write_summary
from .transform import TransformScheme, apply, scheme_transform

logger = logging.getLogger("darken")
# commands report warnings on stderr themselves
logger.addHandler(logging.NullHandler())

STRATEGIES = {"sampled": Strategy.SAMPLED, "full": Strategy.FULL_SCAN, "background": Strategy.BACKGROUND}
SCHEMES = {s.value: s for s in TransformScheme}


def _config(args: argparse.Namespace) -> AnalysisConfig:
    return AnalysisConfig(target_samples=args.samples, bright_floor=args.bright_floor,
                          dark_ceiling=args.dark_ceiling, strategy=STRATEGIES[args.strategy])


def cmd_analyze(args, cfg) -> int:
    stats, decision = analyze(load_image(args.image), cfg)
    print(json.dumps({
        "decision": decision.value, "bright": stats.bright_count, "dark": stats.dark_count,
        "mid": stats.mid_count, "samples": stats.sample_count,
        "max_r": stats.max_r, "max_g": stats.max_g, "max_b": stats.max_b,
    }))
    return 0


def cmd_darken(args, cfg) -> int:
    buf = load_image(args.image)
    scheme = SCHEMES[args.scheme]
    if args.force:
        m = scheme_transform(scheme)
        out = buf if m is None else apply(buf, m)
    else:
        out = render_scheme(buf, scheme, cfg)
    save_image(out, args.output)
    return 0


def cmd_apl(args, cfg) -> int:
    print(f"{scheme_apl(load_image(args.image), SCHEMES[args.scheme], cfg):.6f}")
    return 0


def cmd_corpus(args, cfg) -> int:
    reports, summary = corpus_report(corpus_from_dir(args.directory), cfg)
    for w in summary.warnings:
        print(f"darken: warning: {w}", file=sys.stderr)
    write_csv(reports, args.csv)
    write_summary(summary, args.summary)
    print(json.dumps(summary.to_dict(), indent=2, sort_keys=True))
    return 0


def cmd_simulate(args, cfg) -> int:
    options = ScenarioOptions(analyze_on_create=args.analyze_on_create,
                              video_heuristic=args.video_heuristic,
                              video_window_ms=args.video_window_ms,
                              video_min_updates=args.video_min_updates,
                              jank_threshold_ms=args.jank_ms)
    result = run_scenario(load_scene(args.scene), cfg, options)
    write_trace(result, args.stats, args.emit_frames)
    print(json.dumps(result.stats_dict(), indent=2, sort_keys=True))
    return 0


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommand copies must not overwrite values given before the subcommand
    def default(v):
        return argparse.SUPPRESS if suppress else v

    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--bright-floor", type=float, default=default(0.6),
                   help="fraction of full white at or above which a pixel is bright")
    g.add_argument("--dark-ceiling", type=float, default=default(0.4),
                   help="fraction of full white at or below which a pixel is dark")
    g.add_argument("--samples", type=int, default=default(2500), help="target sample count")
    g.add_argument("--strategy", choices=sorted(STRATEGIES), default=default("sampled"))
    return g


def build_parser() -> argparse.ArgumentParser:
    top, common = _global_flags(suppress=False), _global_flags(suppress=True)

    p = argparse.ArgumentParser(prog="darken", description=__doc__, parents=[top])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="classify an image as bright- or dark-dominant")
    a.add_argument("image")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("darken", parents=[common], help="write a transformed copy of an image")
    d.add_argument("image")
    d.add_argument("-o", "--output", required=True)
    d.add_argument("--scheme", choices=list(SCHEMES), default="invert")
    d.add_argument("--force", action="store_true", help="transform regardless of the analysis decision")
    d.set_defaults(func=cmd_darken)

    m = sub.add_parser("apl", parents=[common], help="average picture level under a scheme")
    m.add_argument("image")
    m.add_argument("--scheme", choices=list(SCHEMES), default="default")
    m.set_defaults(func=cmd_apl)

    c = sub.add_parser("corpus", parents=[common], help="APL report over a directory of PNGs")
    c.add_argument("directory")
    c.add_argument("--csv", default="apl_report.csv")
    c.add_argument("--summary", default="apl_summary.json")
    c.set_defaults(func=cmd_corpus)

    s = sub.add_parser("simulate", parents=[common], help="replay a JSON scene through the compositor")
    s.add_argument("scene")
    s.add_argument("--stats", default="trace_stats.json")
    s.add_argument("--emit-frames", metavar="DIR")
    s.add_argument("--analyze-on-create", action="store_true")
    s.add_argument("--video-heuristic", action="store_true")
    s.add_argument("--video-window-ms", type=float, default=1000.0)
    s.add_argument("--video-min-updates", type=int, default=15)
    s.add_argument("--jank-ms", type=float, default=1000.0 / 60.0)
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
    except ValueError as exc:
        print(f"darken: config error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args, cfg)
    except (ImageInputError, CorpusError, SceneError, OSError) as exc:
        print(f"darken: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
