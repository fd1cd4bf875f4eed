"""Tests for the command-line front end."""

import json

import pytest

import cli
from core.catalog import DATA_DIR
from core.errors import InvariantViolation

MAP_FILE = str(DATA_DIR / "paper-identity.map.json")


def run(capsys, *argv):
    code = cli.main(["--quiet", *argv])
    return code, capsys.readouterr().out


def test_catalog_list(capsys):
    code, out = run(capsys, "catalog")
    assert code == 0
    names = [e["name"] for e in json.loads(out)]
    assert names[:2] == ["paper-dot", "paper-star"]


def test_catalog_dump(capsys):
    code, out = run(capsys, "catalog", "dump", "paper-dot")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "order 6"
    assert lines[3] == "1 2 0 5 3 4"


def test_catalog_dump_json(capsys):
    code, out = run(capsys, "--json", "catalog", "dump", "C2")
    assert code == 0
    assert json.loads(out) == {"name": "C2", "order": 2, "table": [[0, 1], [1, 0]]}


def test_check(capsys):
    code, out = run(capsys, "check", "paper-dot")
    report = json.loads(out)
    assert code == 0
    assert report["reports"]["group"]["holds"] is True
    assert report["reports"]["moufang"]["holds"] is True
    assert report["reports"]["commutative"]["witness"] == [1, 3]


def test_check_star_witness(capsys):
    code, out = run(capsys, "check", "paper-star")
    dia = json.loads(out)["reports"]["diassociative"]
    assert code == 0
    assert dia["witness"] == [3, 3, 1]


def test_classify_shipped_map(capsys):
    code, out = run(capsys, "classify", MAP_FILE)
    assert code == 0
    assert json.loads(out)["verdict"] == "ProperHalfIsomorphism"


def test_search(capsys):
    code, out = run(capsys, "search", "C3", "C3")
    assert code == 0
    assert json.loads(out)["count"] == 2


def test_search_first_proper(capsys):
    code, out = run(capsys, "search", "paper-dot", "paper-star", "--proper-only", "--first")
    report = json.loads(out)
    assert code == 0
    assert report["count"] == 1
    assert report["maps"][0]["verdict"] == "ProperHalfIsomorphism"


def test_nucleus_writes_quotient(capsys, tmp_path):
    target = tmp_path / "q.loop"
    code, out = run(capsys, "nucleus", "S3", "--write-quotient", str(target))
    assert code == 0
    report = json.loads(out)
    assert report["nucleus"] == [0, 1, 2, 3, 4, 5]
    assert report["squaring"]["surjective"] is True
    assert target.read_text().startswith("order 1")
    sidecar = json.loads((tmp_path / "q.loop.cosets.json").read_text())
    assert sidecar == {"cosets": [[0, 1, 2, 3, 4, 5]]}


def test_scott_refuses_non_moufang_target(capsys):
    code, _ = run(capsys, "scott", MAP_FILE)
    assert code == 1


def test_scott_refuses_isomorphism(capsys, tmp_path):
    path = tmp_path / "iso.map.json"
    path.write_text(json.dumps({"source": "chein-S3", "target": "chein-S3", "images": list(range(12))}))
    code, out = run(capsys, "scott", str(path))
    assert code == 1
    assert out == ""


def test_scott_on_proper_moufang_map(capsys, tmp_path):
    images = [0, 1, 2, 3, 4, 5, 6, 7, 8, 11, 10, 9, 14, 15, 12, 13]
    path = tmp_path / "q8.map.json"
    path.write_text(json.dumps({"source": "chein-Q8", "target": "chein-Q8", "images": images}))
    code, out = run(capsys, "scott", str(path))
    report = json.loads(out)
    assert code == 0
    assert [report["triple"][k] for k in "abc"] == [1, 4, 12]
    assert report["verified"] is True
    assert report["a_set"] == [0, 2]
    assert report["hypothesis_holds"] is False


def test_enumerate(capsys):
    code, out = run(capsys, "enumerate", "4")
    assert code == 0
    assert json.loads(out) == {"count": 4, "order": 4}


def test_enumerate_dump(capsys):
    code, out = run(capsys, "--json", "enumerate", "3", "--dump")
    assert code == 0
    assert json.loads(out)[0]["table"] == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


def test_kernels(capsys):
    code, out = run(capsys, "kernels", "S3", "C2")
    report = json.loads(out)
    assert code == 0
    assert report["half_homomorphisms"] == 2
    assert report["non_normal_kernels"] == 0


def test_sweep_over_named_loops(capsys):
    code, out = run(capsys, "sweep", "S3", "paper-dot")
    report = json.loads(out)
    assert code == 0
    assert report["summary"]["pairs"] == 4
    assert report["summary"]["group_proper"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "no-such-loop"],
        ["enumerate", "7"],
        ["catalog", "dump"],
        [],
        ["search", "C3"],
    ],
)
def test_input_errors_exit_one(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 1


def test_trap_exits_two(capsys, monkeypatch):
    def trap(Q):
        raise InvariantViolation("planted")

    monkeypatch.setattr(cli, "check_response", trap)
    code, out = run(capsys, "check", "C2")
    assert code == 2
    assert out == ""
