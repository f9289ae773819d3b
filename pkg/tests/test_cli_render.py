import hashlib
import json
import math

import pytest

from harmonica.cli import main, parse_angle
from harmonica.combinatorics import Basketball, Bimatching, Matching
from harmonica.errors import InvalidInput
from harmonica.polynomials import MonicPolynomial
from harmonica.render import RenderSpec, chord_diagram_svg, curve_plot_svg

QUINTIC_JSON = {"coeffs": [[-2, 0], [5, 0], [3, 0], [6, 0], [0, 0]]}
FIG1_JSON = {
    "n": 5,
    "even": [[0, 10], [2, 8], [4, 6], [12, 18], [14, 16]],
    "odd": [[1, 19], [3, 5], [7, 9], [11, 13], [15, 17]],
}


def write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


class TestParseAngle:
    def test_forms(self):
        assert parse_angle("pi/6") == pytest.approx(math.pi / 6)
        assert parse_angle("2pi/3") == pytest.approx(2 * math.pi / 3)
        assert parse_angle("0.5pi") == pytest.approx(math.pi / 2)
        assert parse_angle("pi") == pytest.approx(math.pi)
        assert parse_angle("1.234") == pytest.approx(1.234)
        assert parse_angle("0") == 0.0

    def test_bad_angle(self):
        with pytest.raises(InvalidInput):
            parse_angle("sixty degrees")


class TestCountCommand:
    def test_basketballs(self, capsys):
        assert main(["count", "--order", "4", "--kind", "basketballs"]) == 0
        out = capsys.readouterr().out
        assert "140" in out and "agree" in out

    def test_rotation_classes_json(self, capsys):
        assert main(
            ["count", "--order", "3", "--kind", "rotation_classes", "--format", "json"]
        ) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["closed_form"] == 6

    def test_necklaces(self, capsys):
        assert main(["count", "--order", "3", "--kind", "necklaces"]) == 0
        assert "12" in capsys.readouterr().out

    def test_guard_exit_code(self, capsys):
        assert main(["count", "--order", "11", "--kind", "rotation_classes"]) == 5


class TestAnalyzeCommand:
    def test_figure1(self, tmp_path, capsys):
        poly = write_json(tmp_path / "q.json", QUINTIC_JSON)
        out = tmp_path / "result.json"
        code = main(
            ["analyze", "--poly", poly, "--alpha", "0", "--beta", "pi/2",
             "--out", str(out)]
        )
        assert code == 0
        data = json.loads(out.read_text())
        assert data["basketball"] == FIG1_JSON
        ball = Basketball.from_json_dict(data["basketball"])
        assert ball.order == 5
        assert len(data["certificates"]) == 2

    def test_f_equals_z(self, tmp_path, capsys):
        poly = write_json(tmp_path / "z.json", {"coeffs": [[0, 0]]})
        assert main(
            ["analyze", "--poly", poly, "--alpha", "pi/6", "--beta", "2pi/3"]
        ) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["basketball"]["even"] == [[0, 2]]
        assert data["basketball"]["odd"] == [[1, 3]]

    def test_degenerate_exit(self, tmp_path, capsys):
        poly = write_json(tmp_path / "z2.json", {"coeffs": [[0, 0], [0, 0]]})
        assert main(
            ["analyze", "--poly", poly, "--alpha", "pi/6", "--beta", "2pi/3"]
        ) == 3

    def test_missing_file_exit(self, capsys):
        assert main(
            ["analyze", "--poly", "/nonexistent.json", "--alpha", "0", "--beta", "1"]
        ) == 2


class TestRealizeCommand:
    def test_order_one(self, tmp_path, capsys):
        ball = write_json(
            tmp_path / "b1.json", {"n": 1, "even": [[0, 2]], "odd": [[1, 3]]}
        )
        assert main(
            ["realize", "--basketball", ball, "--alpha", "pi/6", "--beta", "2pi/3"]
        ) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["polynomial"] == {"coeffs": [[0.0, 0.0]]}

    def test_round_trip_order_two(self, tmp_path, capsys):
        ball_json = {"n": 2, "even": [[0, 2], [4, 6]], "odd": [[1, 7], [3, 5]]}
        ball = write_json(tmp_path / "b2.json", ball_json)
        out = tmp_path / "poly.json"
        assert main(
            ["realize", "--basketball", ball, "--alpha", "pi/6", "--beta", "2pi/3",
             "--out", str(out)]
        ) == 0
        data = json.loads(out.read_text())
        assert data["verification"] == ball_json
        f = MonicPolynomial.from_json_dict(data["polynomial"])
        assert f.degree == 2

    def test_invalid_basketball_exit(self, tmp_path, capsys):
        bad = {
            "n": 5,
            "even": [[0, 18], [2, 16], [4, 6], [8, 14], [10, 12]],
            "odd": [[1, 3], [5, 19], [7, 9], [11, 13], [15, 17]],
        }
        path = write_json(tmp_path / "bad.json", bad)
        assert main(
            ["realize", "--basketball", path, "--alpha", "pi/6", "--beta", "2pi/3"]
        ) == 2


class TestNecklaceCommands:
    def test_extract(self, tmp_path, capsys):
        poly = write_json(tmp_path / "q.json", QUINTIC_JSON)
        assert main(["necklace", "--poly", poly]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["n"] == 5
        assert len(data["matchings"]) == 4

    def test_verify(self, capsys):
        assert main(["verify-necklaces", "--order", "3"]) == 0
        out = capsys.readouterr().out
        assert "12 necklaces" in out and "0 without multiear" in out

    def test_verify_threads(self, capsys):
        assert main(["verify-necklaces", "--order", "3", "--threads", "2"]) == 0
        assert "12 necklaces" in capsys.readouterr().out


class TestEnumerateCommand:
    def test_basketballs(self, tmp_path):
        out = tmp_path / "balls.json"
        assert main(
            ["enumerate", "--order", "2", "--kind", "basketballs", "--out", str(out)]
        ) == 0
        data = json.loads(out.read_text())
        assert data["count"] == 4
        for item in data["items"]:
            Basketball.from_json_dict(item)

    def test_necklaces(self, tmp_path):
        out = tmp_path / "neck.json"
        assert main(
            ["enumerate", "--order", "2", "--kind", "necklaces", "--out", str(out)]
        ) == 0
        assert json.loads(out.read_text())["count"] == 2


class TestRender:
    def test_chord_diagram_deterministic(self):
        ball = Basketball.from_json_dict(FIG1_JSON)
        a = chord_diagram_svg(ball)
        b = chord_diagram_svg(ball)
        assert a == b
        assert a.startswith("<svg") and a.endswith("</svg>")
        assert a.count("<path") == 10  # one chord per pair
        assert a.count("<circle") == 21  # 20 points + boundary circle
        assert hashlib.sha256(a.encode()).hexdigest() == hashlib.sha256(
            b.encode()
        ).hexdigest()

    def test_order_one_two_chords(self):
        ball = Basketball.from_pairs(((0, 2),), ((1, 3),))
        svg = chord_diagram_svg(ball)
        assert svg.count("<path") == 2

    def test_single_matching(self):
        svg = chord_diagram_svg(Matching(((0, 3), (1, 2))))
        assert svg.count("<path") == 2

    def test_curve_plot_panels(self):
        f = MonicPolynomial.from_json_dict(QUINTIC_JSON)
        spec = RenderSpec(kind="curve_plot", size=200, grid=96)
        svg = curve_plot_svg(
            f, [0, math.pi / 12, math.pi / 6, math.pi / 2], spec
        )
        assert 'viewBox="0 0 800 200"' in svg  # 4 panels at 200 px
        assert svg.count("<line") > 100
        assert svg == curve_plot_svg(
            f, [0, math.pi / 12, math.pi / 6, math.pi / 2], spec
        )

    def test_render_command(self, tmp_path):
        ball = write_json(tmp_path / "b.json", FIG1_JSON)
        out = tmp_path / "b.svg"
        assert main(
            ["render", "--input", ball, "--kind", "chord_diagram", "--out", str(out)]
        ) == 0
        assert out.read_text().startswith("<svg")

    def test_render_curve_command(self, tmp_path):
        poly = write_json(tmp_path / "q.json", QUINTIC_JSON)
        out = tmp_path / "q.svg"
        assert main(
            ["render", "--input", poly, "--kind", "curve_plot",
             "--theta", "0", "pi/2", "--size", "150", "--grid", "80",
             "--out", str(out)]
        ) == 0
        assert "<line" in out.read_text()

    def test_bad_spec(self):
        with pytest.raises(InvalidInput):
            RenderSpec(kind="curve_plot", grid=32)
        with pytest.raises(InvalidInput):
            RenderSpec(kind="3d")
