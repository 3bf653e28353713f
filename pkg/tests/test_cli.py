import json

import numpy as np
import pytest

from paracontact import cli
from paracontact import report as rp


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, obj, name="model.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def lie_file(a1, a2):
    return {
        "mode": "lie",
        "dim": 3,
        "g": np.eye(3).tolist(),
        "phi": [[0, 0, 0], [0, 0, 1], [0, 1, 0]],
        "xi": [1, 0, 0],
        "eta": [1, 0, 0],
        "structure_constants": [
            {"i": 0, "j": 1, "k": 1, "value": -a1},
            {"i": 0, "j": 1, "k": 2, "value": -a2},
            {"i": 0, "j": 2, "k": 1, "value": -a2},
            {"i": 0, "j": 2, "k": 2, "value": a1},
        ],
    }


def test_classify_example_file(tmp_path, capsys):
    path = write(tmp_path, {"mode": "example", "n": 1, "a": [1, 1]})
    code, out, _ = run(capsys, "classify", path, "--format", "json")
    assert code == 0
    r = json.loads(out)
    assert r["classification"]["members"] == [4, 9]
    assert r["classification"]["classes"] == ["F4", "F9"]
    assert r["predicates"]["normal"]["holds"] is False
    assert any("as expected" in note for note in r["notes"])


def test_para_sasakian_example(capsys):
    code, out, _ = run(capsys, "example", "0", "1", "--format", "json")
    r = json.loads(out)
    assert code == 0
    assert r["predicates"]["para_sasakian"]["holds"] is True
    assert r["classification"]["is_F4_prime"] is True
    assert r["classification"]["classes"] == ["F4'"]


def test_lie_mode_matches_example_mode(tmp_path, capsys):
    _, out_lie, _ = run(capsys, "classify", write(tmp_path, lie_file(1.0, -2.0)), "--format", "json")
    _, out_ex, _ = run(capsys, "example", "1", "-2", "--format", "json")
    lie, ex = json.loads(out_lie), json.loads(out_ex)
    assert lie["F"]["components"] == ex["F"]["components"]
    assert lie["classification"] == ex["classification"]


def test_raw_zero_F(tmp_path, capsys):
    model = lie_file(0, 0)
    del model["structure_constants"]
    model.update(mode="raw_f", F_components=np.zeros((3, 3, 3)).tolist())
    code, out, _ = run(capsys, "classify", write(tmp_path, model), "--format", "json")
    r = json.loads(out)
    assert code == 0 and r["classification"]["is_F0"]
    assert all(v == 0 for v in r["nijenhuis"]["norms"].values())
    assert all(v == 0 for v in r["assoc_nijenhuis"]["norms"].values())
    assert r["connection"] is None
    assert r["predicates"]["para_sasakian"]["holds"] is None


def test_full_tensors_flag(capsys):
    _, out, _ = run(capsys, "example", "1", "1", "--format", "json", "--full-tensors")
    r = json.loads(out)
    assert np.array(r["nijenhuis"]["N1"]).shape == (3, 3, 3)
    assert np.array(r["connection"]["gamma"]).shape == (3, 3, 3)
    _, out, _ = run(capsys, "example", "1", "1", "--format", "json")
    assert "N1" not in json.loads(out)["nijenhuis"]


def test_text_format(capsys):
    code, out, _ = run(capsys, "example", "1", "0")
    assert code == 0 and "class: F9" in out and "killing_xi" in out


def test_report_round_trip_and_determinism():
    source = {"mode": "example", "n": 2, "a": np.array([0.1, 1 / 3, -2.5, np.pi])}
    r = rp.run_pipeline(source, full_tensors=True)
    text = rp.dumps(r)
    assert rp.loads(text) == r
    assert rp.dumps(rp.run_pipeline(source, full_tensors=True)) == text


def test_parse_error_cites_line(tmp_path, capsys):
    path = write(tmp_path, '{\n  "mode": "example",\n  "n": 1,\n  "a": [1, 1,]\n}')
    code, _, err = run(capsys, "classify", path)
    assert code == 3 and "line 4" in err


@pytest.mark.parametrize(
    "model, field",
    [
        ({"mode": "example", "n": 1, "a": [1]}, "'a'"),
        ({"mode": "nope"}, "'mode'"),
        ({"mode": "example", "n": 0, "a": []}, "'n'"),
        ({**lie_file(1, 1), "g": [[1, 0], [0, 1]]}, "'g'"),
        ({**lie_file(1, 1), "structure_constants": [{"i": 1, "j": 0, "k": 0, "value": 1}]}, "structure_constants[0]"),
    ],
)
def test_parse_error_cites_field(tmp_path, capsys, model, field):
    code, _, err = run(capsys, "classify", write(tmp_path, model))
    assert code == 3 and field in err


def test_nonfinite_numbers_rejected(tmp_path, capsys):
    path = write(tmp_path, '{"mode": "example", "n": 1, "a": [NaN, 1]}')
    code, _, err = run(capsys, "classify", path)
    assert code == 3 and "'a'" in err


def test_validation_failure_embeds_structure_report(tmp_path, capsys):
    model = lie_file(1, 1)
    model["phi"] = np.eye(3).tolist()
    code, out, _ = run(capsys, "classify", write(tmp_path, model), "--format", "json")
    assert code == 2
    r = json.loads(out)
    assert r["structure"]["valid"] is False
    assert r["structure"]["residuals"]["trace_phi"] == 3.0


def test_jacobi_failure_is_validation_error(tmp_path, capsys):
    model = lie_file(1, 1)
    model["structure_constants"] = [{"i": 0, "j": 1, "k": 1, "value": 1}, {"i": 1, "j": 2, "k": 0, "value": 1}]
    code, _, err = run(capsys, "classify", write(tmp_path, model))
    assert code == 2 and "Jacobi" in err


def test_dims_n1(capsys):
    code, out, _ = run(capsys, "dims", "1", "--format", "json")
    t = json.loads(out)
    assert code == 0
    assert [r["formula"] for r in t["rows"][:11]] == [2, 0, 0, 1, 1, 0, 0, 1, 1, 1, 2]
    assert all(r["ok"] for r in t["rows"])


def test_dims_n2_totals(capsys):
    code, out, _ = run(capsys, "dims", "2")
    assert code == 0
    assert out.strip().splitlines()[-1].split() == ["total", "40", "40", "PASS"]


def test_dims_bad_n(capsys):
    code, _, _ = run(capsys, "dims", "0")
    assert code == 2


def test_verify_reduced_and_tight(capsys):
    code, out, _ = run(capsys, "verify", "--seeds", "1", "--dims", "3", "--format", "json")
    v = json.loads(out)
    assert code == 0 and v["ok"] and v["worst"] <= 1e-10
    code, out, _ = run(capsys, "verify", "--tol", "1e-15")
    assert code == 1 and "FAIL" in out


def test_usage_error_is_parse_error(capsys):
    assert cli.main(["classify"]) == 3
    assert cli.main(["example", "1", "2", "3"]) == 3


def test_dims_n3_formula_column(capsys):
    code, out, _ = run(capsys, "dims", "3", "--format", "json")
    t = json.loads(out)
    assert code == 0
    assert [r["formula"] for r in t["rows"][:11]] == [6, 30, 18, 1, 1, 10, 6, 9, 9, 9, 6]
    assert t["ok"]
