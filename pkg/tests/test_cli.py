import json

import pytest
from click.testing import CliRunner

from conftest import FIX_L, FIX_U
from vispath import GenConfig, format_polygon, gen_polygon, parse_polygon
from vispath.cli import main


def _write(tmp_path, name, pts):
    f = tmp_path / name
    f.write_text(f"{len(pts)}\n" + "".join(f"{x} {y}\n" for x, y in pts))
    return str(f)


@pytest.fixture
def files(tmp_path):
    return {
        "u": _write(tmp_path, "u.txt", FIX_U),
        "l": _write(tmp_path, "l.txt", FIX_L),
        "full": _write(tmp_path, "full.txt", [(0.5, 0.5), (2.5, 0.5)]),
        "short": _write(tmp_path, "short.txt", [(0.5, 0.5), (1.5, 0.5)]),
        "point": _write(tmp_path, "point.txt", [(0.5, 0.5)]),
        "bad": _write(tmp_path, "bad.txt", [(0, 0), (1, 1), (1, 0), (0, 1)]),
    }


def run(*args, env=None):
    return CliRunner().invoke(main, [str(a) for a in args], env=env)


def test_certify_exit_codes(files):
    assert run("certify", files["u"], files["full"]).exit_code == 0
    assert run("certify", files["u"], files["short"]).exit_code == 1
    assert run("certify", files["l"], files["point"]).exit_code == 2
    assert run("certify", files["bad"], files["point"]).exit_code == 3


def test_certify_text_output(files):
    out = run("certify", files["u"], files["full"]).output.splitlines()
    assert out[0] == "cut_v\tcut_w\thit\tfirst_hit"
    assert out[-1] == "conclusion\tVISIBILITY_PATH"


def test_certify_json(files):
    doc = json.loads(run("certify", files["l"], files["point"], "--json").output)
    assert doc["verdict"]["conclusion"] == "PRECONDITION_STAR_SHAPED"
    assert doc["oracle"]["uncovered_count"] == 0


def test_input_error_message(files, tmp_path):
    res = run("cuts", str(tmp_path / "missing.txt"))
    assert res.exit_code == 3
    trunc = tmp_path / "t.txt"
    trunc.write_text("3\n0 0\n1 1\n")
    res = run("kernel", str(trunc))
    assert res.exit_code == 3 and "line 4" in res.output


def test_cuts_and_essential(files):
    rows = run("cuts", files["u"]).output.splitlines()[1:]
    assert sorted(r.split("\t")[3] for r in rows) == ["ESSENTIAL", "ESSENTIAL", "REDUNDANT", "REDUNDANT"]
    doc = json.loads(run("essential", files["u"], "--json").output)
    assert [(c["v"], c["w"]) for c in doc["essential_cuts"]] == [(["1", "1"], ["1", "0"]), (["2", "1"], ["2", "0"])]


def test_oracle_command(files):
    res = run("oracle", files["u"], files["short"], "--pitch", "1/4")
    assert res.exit_code == 1
    assert res.output.splitlines()[-1].startswith("uncovered\t")
    assert run("oracle", files["u"], files["full"], "--pitch", "0.25").exit_code == 0


def test_lemma_commands(files):
    assert run("lemma1", files["u"], files["short"]).exit_code == 0
    res = run("lemma2", files["u"], files["full"], "--json")
    assert res.exit_code == 0 and len(json.loads(res.output)["certificates"]) == 10
    assert run("lemma2", files["u"], files["short"]).exit_code == 2
    assert run("lemma3", files["u"], files["full"]).exit_code == 0


def test_kernel_and_q(files):
    assert run("kernel", files["u"]).output.splitlines()[-1] == "empty\tyes"
    doc = json.loads(run("q-subpolygon", files["u"], "--json").output)
    assert sorted(doc["q"]) == [["1", "0"], ["1", "1"], ["2", "0"], ["2", "1"]]


def test_route_writes_path(files, tmp_path):
    out = tmp_path / "route.txt"
    assert run("route", files["u"], "-o", out).exit_code == 0
    assert out.read_text() == "2\n1 0.5\n2 0.5\n"
    assert run("route", files["l"]).output == "2\n0.5 1\n1 0.5\n"


def test_gen_uses_seed_env():
    res = run("gen", "--n", 10, env={"VISPATH_SEED": "4"})
    assert parse_polygon(res.output) == gen_polygon(GenConfig(n=10, seed=4))
    assert res.output == format_polygon(gen_polygon(GenConfig(n=10, seed=4)))
    assert run("gen", "--n", 10, "--seed", 4).output == res.output
    assert run("gen", "--n", 3).exit_code == 2
    assert run("gen", "--n", 2).exit_code == 3


def test_render_svg_and_figure(files, tmp_path):
    svg = tmp_path / "a.svg"
    png = tmp_path / "a.png"
    res = run("render", files["u"], "--path", files["short"], "--oracle", "-o", svg, "--figure", png)
    assert res.exit_code == 0
    text = svg.read_text()
    assert text.startswith("<?xml") and 'class="uncovered"' in text
    assert png.read_bytes()[:4] == b"\x89PNG"
    assert run("render", files["u"], "--path", files["short"], "--oracle").output == text


def test_certify_figure(files, tmp_path):
    png = tmp_path / "c.png"
    assert run("certify", files["u"], files["short"], "--figure", png).exit_code == 1
    assert png.exists()
