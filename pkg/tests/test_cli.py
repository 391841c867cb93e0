import json

import pytest

from trigroup import catalog
from trigroup.cli import EXIT_INPUT, EXIT_NOT_FOUND, EXIT_OK, EXIT_UNDECIDED, run
from trigroup.diagram import canonical_triangle, dump_diagram


@pytest.fixture
def files(tmp_path):
    def write(name, diagram):
        path = tmp_path / name
        path.write_text(dump_diagram(diagram))
        return str(path)
    out = {
        "c333": write("c333.json", canonical_triangle(3, 3, 3)),
        "c244": write("c244.json", canonical_triangle(2, 4, 4)),
        "index3": write("index3.json", catalog.index3_example()),
        "broken": write("broken.json", catalog.broken_example()),
        "ambiguous": write("ambiguous.json", catalog.degenerate_ambiguous()),
    }
    inf = tmp_path / "inf.json"
    inf.write_text(json.dumps(catalog.infinite_input_json()))
    out["infinite"] = str(inf)
    return out


def run_json(capsys, argv):
    code = run(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_validate(files, capsys):
    assert run(["validate", files["c244"]]) == EXIT_OK
    capsys.readouterr()
    assert run(["validate", files["broken"]]) == EXIT_INPUT
    assert "NonInjectiveHom" in capsys.readouterr().err


def test_angles_json(files, capsys):
    code, doc = run_json(capsys, ["angles", files["c244"]])
    assert code == EXIT_OK
    assert {k: v["m_hat"] for k, v in doc.items()} == {"12": 4, "13": 8, "23": 8}


def test_curvature_and_branching(files, capsys):
    code, doc = run_json(capsys, ["curvature", files["c333"]])
    assert doc["kind"] == "euclidean" and doc["angle_sum_over_pi"] == "1"
    code, doc = run_json(capsys, ["branching", files["index3"]])
    assert doc["causes"] == [{"a": 1, "cause": "IndexAtLeast3", "index": 4}]


def test_witness(files, capsys):
    code, doc = run_json(capsys, ["witness", files["index3"], "--verify-depth", "2"])
    assert code == EXIT_OK
    assert doc["verification"]["by_length"] == {"1": 4, "2": 12}


def test_tits_exit_codes(files, capsys):
    code, doc = run_json(capsys, ["tits", files["c244"]])
    assert (code, doc["verdict"]) == (EXIT_OK, "small")
    code, doc = run_json(capsys, ["tits", files["index3"]])
    assert (code, doc["verdict"]) == (EXIT_OK, "large")
    code, doc = run_json(capsys, ["tits", files["ambiguous"]])
    assert (code, doc["verdict"]) == (EXIT_UNDECIDED, "undecided")
    assert run(["tits", files["infinite"]]) == EXIT_INPUT
    assert "Thompson" in capsys.readouterr().err


def test_json_is_byte_identical(files, capsys, tmp_path):
    out = []
    for n in range(2):
        path = tmp_path / f"out{n}.json"
        assert run(["tits", files["index3"], "--json", str(path)]) == EXIT_OK
        assert "large" in capsys.readouterr().out
        out.append(path.read_bytes())
    assert out[0] == out[1]


def test_parse_error_is_located(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "labels": [1, 2, 3],\n  oops\n}\n')
    assert run(["angles", str(path)]) == EXIT_INPUT
    assert f"{path}:3:3:" in capsys.readouterr().err


def test_missing_file(tmp_path, capsys):
    assert run(["angles", str(tmp_path / "nope.json")]) == EXIT_INPUT


def test_certify(files, capsys, tmp_path):
    svg = tmp_path / "c.svg"
    code, doc = run_json(capsys, ["certify", files["c333"], "--word", "1:1,2:1,3:1",
                                  "--svg", str(svg)])
    assert code == EXIT_OK and doc["labels"] == [1, 2, 3]
    assert svg.read_text().startswith("<svg")
    code, doc = run_json(capsys, ["certify", files["c333"], "--word", "1:1,2:1,3:1",
                                  "--infinite-order"])
    assert doc["conclusion"] == "infinite_order"
    assert run(["certify", files["c333"], "--word", "1:1,1:1"]) == EXIT_NOT_FOUND
    assert run(["certify", files["c333"], "--word", "1:x"]) == EXIT_INPUT


def test_shoot(capsys):
    code, doc = run_json(capsys, ["shoot", "2,4,4", "--start", "1/4,1/4", "--direction", "1,0",
                                  "--reflections", "2"])
    assert code == EXIT_OK and doc["labels"] == [3, 1]
    assert doc["points"][1] == ["3/4", "0", "1/4", "0"]
    assert run(["shoot", "244", "--start", "1/4,1/4", "--direction=-1,-1"]) == EXIT_NOT_FOUND
    capsys.readouterr()
    assert run(["shoot", "333", "--orthogonal", "1"]) == EXIT_OK
    assert "labels" in capsys.readouterr().out


def test_wallpaper_and_dominate(capsys):
    code, doc = run_json(capsys, ["wallpaper", "2,3,6"])
    assert code == EXIT_OK and doc["lattice"]["rank"] == 2
    assert run(["wallpaper", "2,3,7"]) == EXIT_INPUT
    code, doc = run_json(capsys, ["dominate", "4", "5", "6"])
    assert doc["euclidean"] == [3, 3, 3]
    assert run(["dominate", "2", "3", "5"]) == EXIT_INPUT


def test_export_presentation(files, capsys):
    assert run(["export-presentation", files["c244"]]) == EXIT_OK
    assert capsys.readouterr().out.count("gen ") == 20


def test_bad_arguments(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["angles", "x.json", "--threads", "0"])
    assert exc.value.code == 2
