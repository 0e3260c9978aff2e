"""
=====================================
Average Picture Level across a corpus
=====================================

APL is the mean luminance divided by full white. Each screen is measured as
shown by default, with content-aware inversion, with red-shift, and with
both; reductions are relative to the default image.
"""
from pathlib import Path

from darken.metrics import corpus_report, write_csv, write_summary
from darken.synth import app_corpus

reports, summary = corpus_report(app_corpus())

print(f"{'id':<10} {'default':>8} {'inverted':>8} {'red':>8} {'both':>8}  decision")
for r in reports:
    print(f"{r.id:<10} {r.apl_default:8.3f} {r.apl_smartnight:8.3f} "
          f"{r.apl_redshift:8.3f} {r.apl_combined:8.3f}  {r.decision.value}")

###############################################################################
# Aggregate darkening and head-to-head counts.
print("\nmean APL:", {k: round(v, 3) for k, v in summary.mean_apl.items()})
print("mean reduction:", {k: round(v, 3) for k, v in summary.mean_reduction.items()})
print("inverted darker than red-shift:", summary.wins["smartnight<redshift"], "of", summary.count)
print("red-shift darker than inverted:", summary.wins["redshift<smartnight"], "of", summary.count)
print("both darker than red-shift:    ", summary.wins["combined<redshift"], "of", summary.count)

out = Path("demo_output")
out.mkdir(exist_ok=True)
write_csv(reports, out / "apl_report.csv")
write_summary(summary, out / "apl_summary.json")
