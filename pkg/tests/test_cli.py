import io
import json
import xml.etree.ElementTree as ET

import pytest

from conftest import fixture_path
from geodesic_kernel.cli import registry, run
from geodesic_kernel.cli.main import dumps

SVG = "{http://www.w3.org/2000/svg}"


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv("GEODESIC_CACHE_DIR", raising=False)
    monkeypatch.delenv("GEODESIC_CHECK", raising=False)


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestCenter:
    def test_square_snapshot(self):
        code, out, err = invoke("center", fixture_path("square.json"))
        assert code == 0, err
        assert out.strip() == '{"center":[0.5,0.5],"radius":0.7071068}'

    def test_rectangle(self):
        code, out, _ = invoke("center", fixture_path("rectangle.json"), "--seed", "3")
        assert code == 0
        assert json.loads(out) == {"center": [2.0, 1.0], "radius": 2.236068}

    def test_bowtie_rejected(self):
        code, out, err = invoke("center", fixture_path("bowtie.json"))
        assert code == 1
        assert out == ""
        assert err.startswith("NotSimple")

    def test_missing_file(self, tmp_path):
        code, _, err = invoke("center", str(tmp_path / "absent.json"))
        assert code == 1
        assert "InvalidInput" in err

    def test_bad_tolerance(self):
        code, _, err = invoke("center", fixture_path("square.json"), "--tolerance=0")
        assert code == 1
        assert "tolerance" in err

    def test_missing_command(self):
        code, _, _ = invoke()
        assert code == 1

    def test_with_cache(self, tmp_path):
        cache_dir = str(tmp_path / "cache")
        first = invoke("center", fixture_path("L.json"), "--cache-dir", cache_dir)
        second = invoke("center", fixture_path("L.json"), "--cache-dir", cache_dir)
        assert first[0] == second[0] == 0
        assert first[1] == second[1]


class TestOtherCommands:
    def test_diameter(self):
        code, out, _ = invoke("diameter", fixture_path("L.json"))
        assert code == 0
        data = json.loads(out)
        assert (data["u"], data["v"]) == (1, 5)
        assert data["length"] == pytest.approx(2.828427)

    def test_path_bends_at_reflex_vertex(self):
        code, out, _ = invoke("path", fixture_path("L.json"), "1.8", "0.4", "0.4", "1.8")
        assert code == 0
        data = json.loads(out)
        assert data["path"] == [[1.8, 0.4], [1.0, 1.0], [0.4, 1.8]]
        assert data["length"] == pytest.approx(2.0)

    def test_path_outside(self):
        code, _, err = invoke("path", fixture_path("L.json"), "1.5", "1.5", "0.5", "0.5")
        assert code == 1
        assert err.startswith("PointOutside")

    def test_spt(self):
        code, out, _ = invoke("spt", fixture_path("L.json"), "1")
        assert code == 0
        data = json.loads(out)
        assert data["root"] == 1
        assert data["parent"][1] == -1
        assert data["parent"][5] == 3
        assert data["dist"][5] == pytest.approx(2.828427)

    def test_spt_out_of_range(self):
        code, _, err = invoke("spt", fixture_path("L.json"), "6")
        assert code == 1
        assert err.startswith("RootOutside")

    def test_cover_stats(self):
        code, out, _ = invoke("cover", fixture_path("square.json"), "--stats")
        assert code == 0
        stats = json.loads(out)
        assert stats["num_triangles"] == 16
        assert stats["n"] == 4

    def test_cover_summary(self):
        code, out, _ = invoke("cover", fixture_path("square.json"))
        assert json.loads(out) == {"n": 4, "num_triangles": 16}

    def test_oracle(self):
        code, out, _ = invoke("oracle", fixture_path("square.json"), "--grid", "64")
        assert code == 0
        data = json.loads(out)
        assert data["discrepancy"]["position"] < 1e-6
        assert data["discrepancy"]["radius"] < 1e-6

    def test_oracle_grid_floor(self):
        code, _, err = invoke("oracle", fixture_path("square.json"), "--grid", "8")
        assert code == 1
        assert "grid" in err


class TestRender:
    @pytest.mark.parametrize("layer", ["cover", "hourglasses", "center"])
    def test_layers(self, tmp_path, layer):
        svg = tmp_path / f"{layer}.svg"
        code, out, err = invoke("render", fixture_path("L.json"), "--svg", str(svg), "--layer", layer)
        assert code == 0, err
        assert json.loads(out) == {"layer": layer, "svg": str(svg)}
        root = ET.parse(str(svg)).getroot()
        assert root.tag == SVG + "svg"
        assert root.get("version") == "1.1"
        assert root.find(f".//{SVG}g[@id='{layer if layer != 'center' else 'paths'}']") is not None

    def test_polygon_coordinates_preserved(self, tmp_path):
        svg = tmp_path / "sq.svg"
        code, _, _ = invoke("center", fixture_path("square.json"), "--svg", str(svg))
        assert code == 0
        root = ET.parse(str(svg)).getroot()
        outline = root.find(f".//{SVG}g[@id='polygon']/{SVG}polygon")
        pts = [tuple(float(v) for v in pair.split(",")) for pair in outline.get("points").split()]
        expected = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
        for got, want in zip(pts, expected):
            assert got == pytest.approx(want, abs=1e-6)
        dot = root.find(f".//{SVG}g[@id='center']/{SVG}circle")
        assert float(dot.get("cx")) == pytest.approx(0.5, abs=1e-6)

    def test_render_needs_svg(self):
        code, _, _ = invoke("render", fixture_path("square.json"))
        assert code == 1


def test_registry_lists_all_commands():
    names = {c["name"] for c in registry.get_available_commands()}
    assert names == {"center", "diameter", "path", "spt", "cover", "oracle", "render"}


def test_dumps_rounds_and_sorts():
    assert dumps({"b": 1.23456789, "a": [float("inf"), 2]}) == '{"a":[null,2],"b":1.234568}'
