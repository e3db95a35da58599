import json

import pytest

from psl2lift import make_field
from psl2lift.cli import parse_element, parse_matrix, run
from psl2lift.errors import InputError
from psl2lift.lifting import GEdge, GraphOfGroups, GVertex, gog_to_json
from psl2lift.sl2 import Mat2


def run_json(argv, capsys):
    code = run(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_classify(capsys):
    code, doc = run_json(["classify", "--p", "5", "--matrix", '[["u", 0], [0, "1/u"]]'], capsys)
    assert code == 0
    assert (doc["kind"], doc["length"], doc["schema"]) == ("hyperbolic", 2, 1)


def test_bad_matrix_exit_code(capsys):
    assert run(["classify", "--matrix", "nonsense"]) == 2
    assert run(["classify", "--matrix", '[["__import__", 0], [0, 1]]']) == 2


def test_determinant_checked(capsys):
    assert run(["classify", "--matrix", "[[1, 2], [3, 4]]"]) == 2


def test_gallery_verify_no_lift(capsys):
    code, doc = run_json(["gallery", "--family", "F1", "--p", "13", "--verify-no-lift"], capsys)
    assert code == 0
    assert doc["no_lift"]["minus_identity"] == 16


def test_gallery_dense_and_condition_error(capsys):
    code, doc = run_json(["gallery", "dense", "--p", "5", "--lambda", "2", "--b", "1"], capsys)
    assert code == 0
    assert doc["default_pair"]
    assert run(["gallery", "dense", "--p", "5", "--lambda", "1", "--b", "1"]) == 2


def test_scan_output_is_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert run(["scan", "--family", "flat", "--max-len", "3", "--out", str(path), "--words"]) == 0
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["words"] == 1 + 8 + 56 + 392
    assert doc["all_in_zero_pm2"]


def test_fixset_and_lift(capsys):
    code, doc = run_json(["fixset", "--p", "3", "--char", "3", "--depth", "4",
                          "--matrix", "[[1, 1], [0, 1]]"], capsys)
    assert code == 0 and doc["kind"] == "horoball" and doc["verified"]
    assert run(["lift", "--p", "7", "--matrix", "[[0, 1], [-1, 0]]"]) == 2
    code, doc = run_json(["lift", "--p", "7", "--char", "7", "--group",
                          "--matrix", "[[1, 1], [0, 1]]", "--matrix", "[[2, 0], [0, 4]]"], capsys)
    assert code == 0
    assert doc["classification"] == {"kind": "BorelType", "order": 21, "p_part": 7, "cyclic": 3}


def test_lift_gog(tmp_path, capsys):
    K = make_field(7, 16)
    A = Mat2.diag(K, K.teichmuller(2))
    gog = GraphOfGroups([GVertex("v0", [A])], [], ["v0.0^3"])
    path = tmp_path / "gog.json"
    path.write_text(json.dumps(gog_to_json(gog)))
    code, doc = run_json(["lift-gog", "--input", str(path)], capsys)
    assert code == 0 and doc["verdict"] == "Lift"
    assert run(["lift-gog", "--input", str(tmp_path / "missing.json")]) == 2


def test_tree_ball_dot(capsys):
    assert run(["tree-ball", "--p", "2", "--depth", "2", "--matrix", "[[1, 1], [0, 1]]"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph ball {")


def test_selftest(capsys):
    code, doc = run_json(["selftest", "--p", "5", "--N", "32"], capsys)
    assert code == 0 and doc["ok"]


def test_env_override(monkeypatch, capsys):
    monkeypatch.setenv("PSL2LIFT_P", "13")
    code, doc = run_json(["gallery", "--family", "F2"], capsys)
    assert code == 0
    assert doc["matrices"]["A"]["field"]["p"] == 13


def test_expression_parser():
    K = make_field(5, 16)
    x = parse_element("(u**2 + 1) / (2*u)", K)
    assert x.valuation() == -1
    with pytest.raises(InputError):
        parse_element("u.__class__", K)
    m = parse_matrix('[["i", 0], [0, "-i"]]', make_field(7, 16))
    assert m.field.is_extension
