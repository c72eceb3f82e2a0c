import csv
import io
import json
import math

import pytest

from diskpath.cli import main
from diskpath.geometry import Disk
from diskpath.render import RenderSpec, render_svg, weight_color
from diskpath.scene import Scene, save_scene


@pytest.fixture
def obstacle(tmp_path):
    f = tmp_path / "ob.json"
    f.write_text('{"disks": [{"cx": 0, "cy": 0, "r": 1, "w": "inf"}]}')
    return str(f)


@pytest.fixture
def mixed(tmp_path):
    f = tmp_path / "mixed.json"
    save_scene(Scene.from_disks([Disk(0, 0, 0, 1, 0.6), Disk(1, 4, 1, 1.2, math.inf), Disk(2, 1, 4, 0.8, 0.0)]), f)
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exact_obstacles_json(capsys, obstacle):
    code, out, _ = run(capsys, "exact-obstacles", "--scene", obstacle, "--s", "-2,0", "--t", "2,0")
    assert code == 0
    doc = json.loads(out)
    assert doc["weight"] == pytest.approx(2 * math.sqrt(3) + math.pi / 3, rel=1e-12)
    assert [p["type"] for p in doc["pieces"]] == ["seg", "arc", "seg"]


def test_exact_obstacles_rejects_mid_weights(capsys, mixed):
    code, _, err = run(capsys, "exact-obstacles", "--scene", mixed, "--s", "-3,0", "--t", "8,0")
    assert code == 1 and err


def test_route_json_fields(capsys, mixed):
    code, out, _ = run(capsys, "route", "--scene", mixed, "--epsilon", "0.5", "--s", "-3,0", "--t", "8,0")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"weight", "euclidean", "pieces"}
    assert doc["weight"] <= doc["euclidean"] * 1.6 + 1e-9


def test_route_svg_is_deterministic(capsys, mixed, tmp_path):
    outs = []
    for name in ("a.svg", "b.svg"):
        f = tmp_path / name
        code, _, _ = run(capsys, "route", "--scene", mixed, "--epsilon", "0.25", "--s", "-3,0", "--t", "3,0",
                         "--format", "svg", "--out", str(f))
        assert code == 0
        outs.append(f.read_bytes())
    assert outs[0] == outs[1]
    text = outs[0].decode()
    assert text.startswith("<svg") and "<path" in text and text.count("<circle") > 3


def test_query_from_scene_file(capsys, tmp_path):
    f = tmp_path / "q.json"
    f.write_text('{"disks": [{"cx": 0, "cy": 0, "r": 1, "w": 1}], "query": {"s": [-3, 0], "t": [3, 0]}}')
    code, out, _ = run(capsys, "route", "--scene", str(f), "--epsilon", "1")
    assert code == 0 and json.loads(out)["weight"] == pytest.approx(6.0)


def test_missing_terminals(capsys, obstacle):
    code, _, err = run(capsys, "route", "--scene", obstacle, "--epsilon", "1")
    assert code == 1 and "--s" in err


def test_overlap_exit_1(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"disks": [{"cx": 0, "cy": 0, "r": 1, "w": 1}, {"cx": 1, "cy": 0, "r": 1, "w": 1}]}')
    code, _, err = run(capsys, "route", "--scene", str(f), "--epsilon", "1", "--s", "5,5", "--t", "6,6")
    assert code == 1 and "overlap" in err


def test_terminal_in_obstacle_exit_1(capsys, obstacle):
    code, _, _ = run(capsys, "route", "--scene", obstacle, "--epsilon", "1", "--s", "0,0", "--t", "6,6")
    assert code == 1


def test_parse_error_exit_2(capsys, tmp_path):
    f = tmp_path / "broken.json"
    f.write_text('{"disks": [\n')
    code, _, err = run(capsys, "route", "--scene", str(f), "--epsilon", "1", "--s", "5,5", "--t", "6,6")
    assert code == 2 and "line" in err


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, _ = run(capsys, "route", "--scene", str(tmp_path / "nope.json"), "--epsilon", "1", "--s", "5,5",
                     "--t", "6,6")
    assert code == 2


def test_bad_epsilon_exit_1(capsys, obstacle):
    code, _, _ = run(capsys, "discretize", "--scene", obstacle, "--epsilon", "1.5")
    assert code == 1


def test_discretize_nodes(capsys, obstacle, tmp_path):
    svg = tmp_path / "nodes.svg"
    code, out, _ = run(capsys, "discretize", "--scene", obstacle, "--epsilon", "0.5", "--svg", str(svg))
    assert code == 0
    nodes = json.loads(out)
    assert {n["kind"] for n in nodes} == {"vicinity_center", "ring_point"}
    assert svg.read_text().count("<circle") >= len(nodes)


def test_spanner_output(capsys, mixed):
    code, out, _ = run(capsys, "spanner", "--scene", mixed, "--epsilon", "1", "--k", "6")
    assert code == 0
    doc = json.loads(out)
    assert doc["k"] == 6
    assert 1.0 <= doc["ratio"] <= doc["bound"] + 1e-9
    assert len(doc["edges"]) <= 12 * doc["nodes"]


def test_spanner_small_k(capsys, obstacle):
    code, _, _ = run(capsys, "spanner", "--scene", obstacle, "--epsilon", "1", "--k", "3")
    assert code == 1


def test_bench_writes_table_and_figure(capsys, mixed, tmp_path):
    out_dir = tmp_path / "bench"
    code, out, _ = run(capsys, "bench", "--scene", mixed, "--epsilons", "1,0.5,0.25", "--out-dir", str(out_dir))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["epsilon"]) for r in rows] == [1.0, 0.5, 0.25]
    for r in rows:
        assert int(r["nodes"]) <= float(r["total_bound"])
    assert (out_dir / "bench.csv").read_text() == out
    assert (out_dir / "bench.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_render_figure(capsys, mixed, tmp_path):
    png = tmp_path / "scene.png"
    svg = tmp_path / "scene.svg"
    code, _, _ = run(capsys, "render", "--scene", mixed, "--epsilon", "1", "--s", "-3,0", "--t", "8,0",
                     "--out", str(svg), "--figure", str(png))
    assert code == 0
    assert png.stat().st_size > 1000
    assert "<path" in svg.read_text()


def test_verify_quick(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--quick", "--out-dir", str(tmp_path))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and all(r["ok"] == "True" for r in rows)
    assert (tmp_path / "verify.png").exists()


def test_global_tolerance_flag(capsys, obstacle):
    code, out, _ = run(capsys, "--tolerance", "1e-6", "exact-obstacles", "--scene", obstacle, "--s", "-2,0",
                       "--t", "2,0")
    assert code == 0 and json.loads(out)["weight"] == pytest.approx(4.5112991663, rel=1e-9)


class TestRender:
    def test_color_ramp_ends(self):
        spec = RenderSpec()
        assert weight_color(math.inf, spec) == "#555555"
        assert weight_color(0.0, spec) != weight_color(1.4, spec)

    def test_bytes_stable_without_path(self):
        sc = Scene.from_disks([Disk(0, 0, 0, 1, 0.5)])
        assert render_svg(sc) == render_svg(sc)
        assert "<path" not in render_svg(sc)
