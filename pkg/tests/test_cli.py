import csv
import json
import subprocess
import sys

import pytest

from darken.cli import main
from darken.imagebuf import Color, ImageBuffer, load_image, save_image
from darken.synth import flicker_scene, save_scene


@pytest.fixture
def pngs(tmp_path):
    paths = {}
    for name, c in [("white", Color(255, 255, 255)), ("black", Color(0, 0, 0))]:
        paths[name] = tmp_path / f"{name}.png"
        save_image(ImageBuffer.filled(16, 16, c), paths[name])
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name,decision", [("white", "TRANSFORM"), ("black", "PRESERVE")])
def test_analyze(capsys, pngs, name, decision):
    code, out, _ = run(capsys, "analyze", pngs[name])
    doc = json.loads(out)
    assert code == 0 and doc["decision"] == decision
    assert set(doc) == {"decision", "bright", "dark", "mid", "samples", "max_r", "max_g", "max_b"}


@pytest.mark.parametrize("argv", [
    ["--bright-floor", "0.3", "--dark-ceiling", "0.5", "analyze", "{img}"],
    ["analyze", "--bright-floor", "0.3", "--dark-ceiling", "0.5", "{img}"],
    ["analyze", "--samples", "0", "{img}"],
])
def test_config_errors(capsys, pngs, argv):
    code, out, err = run(capsys, *[a.format(img=pngs["white"]) for a in argv])
    assert code != 0 and out == "" and "config error" in err


def test_global_flags_before_subcommand(capsys, pngs):
    code, out, _ = run(capsys, "--samples", "4", "analyze", pngs["white"])
    assert json.loads(out)["samples"] == 4
    code, out, _ = run(capsys, "--strategy", "full", "analyze", pngs["white"])
    assert json.loads(out)["samples"] == 256


def test_analyze_unreadable(capsys, tmp_path):
    code, out, err = run(capsys, "analyze", tmp_path / "none.png")
    assert code != 0 and "error" in err


@pytest.mark.parametrize("name,flags,expected", [
    ("white", [], 0), ("black", [], 0), ("black", ["--force"], 255),
])
def test_darken_invert(capsys, pngs, tmp_path, name, flags, expected):
    out_path = tmp_path / "out.png"
    code, _, _ = run(capsys, "darken", pngs[name], "--scheme", "invert", "-o", out_path, *flags)
    assert code == 0
    assert (load_image(out_path).rgb() == expected).all()


def test_darken_unwritable(capsys, pngs, tmp_path):
    code, _, err = run(capsys, "darken", pngs["white"], "-o", tmp_path / "no" / "dir" / "x.png")
    assert code != 0


@pytest.mark.parametrize("name,scheme,expected", [
    ("white", "default", "1.000000"), ("white", "redshift", "0.375000"),
    ("black", "invert-redshift", "0.000000"), ("white", "invert", "0.000000"),
])
def test_apl(capsys, pngs, name, scheme, expected):
    code, out, _ = run(capsys, "apl", pngs[name], "--scheme", scheme)
    assert code == 0 and out.strip() == expected


def test_corpus(capsys, pngs, tmp_path):
    code, out, _ = run(capsys, "corpus", tmp_path, "--csv", tmp_path / "r.csv", "--summary", tmp_path / "s.json")
    assert code == 0
    rows = list(csv.reader(open(tmp_path / "r.csv")))
    assert len(rows) == 3 and [r[0] for r in rows[1:]] == ["black.png", "white.png"]
    assert json.loads(out) == json.loads((tmp_path / "s.json").read_text())


def test_corpus_skips_corrupt(capsys, pngs, tmp_path):
    (tmp_path / "corrupt.png").write_bytes(b"nope")
    code, out, err = run(capsys, "corpus", tmp_path, "--csv", tmp_path / "r.csv", "--summary", tmp_path / "s.json")
    assert code == 0 and "corrupt.png" in err
    assert len(list(csv.reader(open(tmp_path / "r.csv")))) == 3


def test_corpus_missing_or_empty(capsys, tmp_path):
    assert run(capsys, "corpus", tmp_path / "missing")[0] != 0
    assert run(capsys, "corpus", tmp_path)[0] != 0


def test_simulate(capsys, tmp_path):
    scene = save_scene(flicker_scene(), tmp_path, "flicker")
    code, out, _ = run(capsys, "simulate", scene, "--stats", tmp_path / "a.json", "--emit-frames", tmp_path / "f")
    assert code == 0 and json.loads(out)["flips_per_layer"]["video"] == 9
    assert len(list((tmp_path / "f").glob("*.png"))) == 10
    code, out, _ = run(capsys, "simulate", scene, "--video-heuristic", "--stats", tmp_path / "b.json")
    assert json.loads((tmp_path / "b.json").read_text())["flips_per_layer"]["video"] == 0


def test_simulate_rejects_decreasing_times(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"canvas": {"width": 2, "height": 2}, "layers": [{"id": "a", "z": 0}],
                                "events": [{"t_ms": 10, "kind": "compose"}, {"t_ms": 3, "kind": "compose"}]}))
    code, _, err = run(capsys, "simulate", path, "--stats", tmp_path / "s.json")
    assert code != 0 and "event 1" in err


def test_deterministic_outputs(capsys, pngs, tmp_path):
    for k in range(2):
        run(capsys, "corpus", tmp_path, "--csv", tmp_path / f"r{k}.csv", "--summary", tmp_path / f"s{k}.json")
        run(capsys, "darken", pngs["white"], "-o", tmp_path / f"d{k}.out")
    for a, b in [("r0.csv", "r1.csv"), ("s0.json", "s1.json"), ("d0.out", "d1.out")]:
        assert (tmp_path / a).read_bytes() == (tmp_path / b).read_bytes()


def test_module_entry_point(pngs):
    proc = subprocess.run([sys.executable, "-m", "darken", "apl", str(pngs["white"]), "--scheme", "redshift"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "0.375000"
