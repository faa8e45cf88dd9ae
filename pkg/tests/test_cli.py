import json
import subprocess
import sys

import pytest

from lenstri import canonical_signature, l_k
from lenstri.cli import parse_range, run


@pytest.fixture
def lk3(tmp_path):
    path = tmp_path / "l3.json"
    code, out, err = run(["build", "lk", "3", "--out", str(path)])
    assert code == 0, err
    return str(path)


def test_build_lens_and_info(tmp_path):
    path = tmp_path / "l26.json"
    assert run(["build", "lens", "26", "5", "--out", str(path)])[0] == 0
    code, out, _ = run(["info", str(path)])
    doc = json.loads(out)
    assert code == 0
    assert doc["tetrahedra"] == 7
    assert doc["h1_text"] == "Z26"
    assert doc["counting_identity"] == 6
    assert doc["validation"]["status"] == "valid-closed-manifold"


def test_build_special_needs_flag():
    code, _, err = run(["build", "lens", "3", "1"])
    assert code == 1
    assert "--special" in json.loads(err)["error"]
    code, out, _ = run(["build", "lens", "3", "1", "--special"])
    assert code == 0 and json.loads(out)["tetrahedra"] == 2


def test_usage_errors_exit_2():
    assert run(["build", "lens", "5"])[0] == 2
    assert run(["frobnicate"])[0] == 2
    assert run(["verify", "parity", "--k", "x..y"])[0] == 2


def test_build_output_is_loadable(lk3):
    from lenstri import Triangulation

    with open(lk3) as fh:
        tri = Triangulation.from_dict(json.load(fh))
    assert canonical_signature(tri) == canonical_signature(l_k(3)[0])


def test_info_csv(lk3):
    code, out, _ = run(["info", lk3, "--csv"])
    lines = out.splitlines()
    assert lines[0] == "edge,degree,boundary"
    assert [int(x.split(",")[1]) for x in lines[1:]] == [8, 3, 4, 3]


def test_color_and_surface(lk3):
    code, out, _ = run(["color", lk3])
    (c,) = json.loads(out)["colorings"]
    assert code == 0 and c["eq1"]["holds"]
    code, out, _ = run(["surface", lk3])
    (s,) = json.loads(out)["surfaces"]
    assert (s["chi_cells"], s["chi_formula"], s["orientable"]) == (-1, -1, False)


def test_lst_and_model(lk3):
    code, out, _ = run(["lst", lk3])
    doc = json.loads(out)
    assert doc["s_maximal"] == [[0, 1], [1, 2]]
    code, out, _ = run(["model", lk3, "--edge", "1"])
    assert json.loads(out)["label"] == "S_2"
    assert run(["model", lk3, "--edge", "9"])[0] == 1


def test_move_round_trip(lk3, tmp_path):
    mid = tmp_path / "mid.json"
    assert run(["move", lk3, "--pachner23", "1", "--out", str(mid)])[0] == 0
    code, out, _ = run(["info", str(mid)])
    doc = json.loads(out)
    assert doc["tetrahedra"] == 4 and doc["h1_text"] == "Z6"


def test_census_ndjson():
    code, out, _ = run(["census", "2", "--h1", "Z8"])
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and len(rows) == 1
    assert rows[0]["h1"] == {"rank": 0, "torsion": [8]}
    code, out, _ = run(["census", "1"])
    assert len(out.splitlines()) == 3


def test_verify_suites():
    code, out, _ = run(["verify", "sk-degrees", "--k", "2..6"])
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["params"]["k"] == [2, 6]
    code, out, _ = run(["verify", "lk-degrees", "--k", "1,3", "--csv"])
    assert out.splitlines()[0].startswith("k,")
    code, out, _ = run(["verify", "families", "--P", "4..40", "--n", "2..4"])
    doc = json.loads(out)
    # the families overlap as written, and the report says so
    assert code == 1
    assert [f["check"] for f in doc["failures"]] == ["families mutually exclusive for P <= 40"]


def test_verify_is_deterministic():
    a = run(["verify", "example-41s"])
    b = run(["verify", "example-41s"])
    assert a == b and a[0] == 0


def test_parse_range():
    assert parse_range("2..5") == (2, 5)
    assert parse_range("1,3,5") == [1, 3, 5]
    assert parse_range("7") == 7


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lenstri", "build", "lk", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["tetrahedra"] == 1
