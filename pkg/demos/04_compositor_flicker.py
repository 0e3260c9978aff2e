"""
=======================================
Layer compositing, flicker and the fixes
=======================================

Analysis only runs when a latched layer is invalidated, so a layer's cached
decision can lag its content. Video that alternates bright and dark shots
flickers between inverted and real colors; a brand-new layer can flash white
before its first analysis. Two mitigations are simulated: pinning
frequently-updated layers to "preserve", and analyzing at layer creation.
"""
from darken.compositor import ScenarioOptions, run_scenario
from darken.synth import flicker_scene, letterbox_scene, static_bright_scene


def show(title, result, layer):
    marks = "".join("T" if f.transformed[layer] else "." for f in result.frames)
    print(f"{title:<38} frames {marks}  flips={result.flicker.flips[layer]}")


show("alternating video", run_scenario(flicker_scene()), "video")
show("alternating video + heuristic",
     run_scenario(flicker_scene(), options=ScenarioOptions(video_heuristic=True)), "video")
show("letterboxed video", run_scenario(letterbox_scene()), "video")
show("new bright layer", run_scenario(static_bright_scene()), "app")
show("new bright layer + analyze on create",
     run_scenario(static_bright_scene(), options=ScenarioOptions(analyze_on_create=True)), "app")

###############################################################################
# Render-time statistics from the simulated durations.
stats = run_scenario(flicker_scene()).stats
print(f"\njanky {stats.janky_fraction:.0%}  p50={stats.p50}ms  p90={stats.p90}ms  "
      f"p95={stats.p95}ms  p99={stats.p99}ms")
