import io
import json
import subprocess
import sys

import pytest

from twistcube import cli, verify
from twistcube.cli import main

SPLIT_CUBE = '{"a":"1","e":["0","0","0"],"f":["1","1","1"],"b":"1"}'
DISTINGUISHED = '{"a":"1","e":["0","0","0"],"f":["0","0","0"],"b":"-1"}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None


def test_invariant(capsys):
    code, doc = run_json(capsys, "invariant", SPLIT_CUBE)
    assert code == 0
    assert doc == {"delta": "5", "class": "5"}


def test_invariant_over_fp_with_algebra(capsys):
    # over F_7(sqrt 3), f = (1, 1 + 0*sqrt 3) has norm 1, so Delta = 1 + 4 = 5, a non-square
    cube = '{"a":"1","e":["0","0","0"],"f":["1","1","0"],"b":"1"}'
    code, doc = run_json(capsys, "invariant", cube, "--field", "Fp:7", "--algebra", '{"shape": {"quad_pair": 3}}')
    assert code == 0
    assert doc == {"delta": 5, "class": 3}


def test_to_comp_distinguished(capsys):
    code, doc = run_json(capsys, "to-comp", DISTINGUISHED)
    assert code == 0
    assert doc["type"] == "comp_alg2"
    assert doc["Q"] == {"x2": ["0", "0", "0"], "xy": ["1", "1", "1"], "y2": ["0", "0", "0"]}
    assert doc["beta_e1"] == [["0", "0", "0"], ["1", "1", "1"]]
    assert doc["beta_e2"] == [["1", "1", "1"], ["0", "0", "0"]]


def test_to_comp_to_cube_round_trip(capsys):
    cube = '{"a":"2","e":["1","0","3"],"f":["1/2","1","1"],"b":"-4"}'
    _, comp = run_json(capsys, "to-comp", cube)
    code, back = run_json(capsys, "to-cube", json.dumps(comp))
    assert code == 0
    assert {k: back[k] for k in "aefb"} == json.loads(cube)


def test_reduce(capsys):
    code, doc = run_json(capsys, "reduce", '{"a":"2","e":["0","0","0"],"f":["0","0","0"],"b":"3"}')
    assert code == 0
    assert doc["reduced"]["a"] == "1" and doc["reduced"]["b"] == "12"
    assert [g["gen"] for g in doc["word"]["word"]] == ["torus"]


def test_reduce_degenerate_is_input_error(capsys):
    code, out, err = run(capsys, "reduce", '{"a":"0","e":["0","0","0"],"f":["1","1","1"],"b":"1"}')
    assert code == 2
    assert "Delta" in err and out == ""


def test_slice(capsys):
    code, doc = run_json(capsys, "slice", SPLIT_CUBE)
    assert code == 0
    assert doc["slices"][0]["form"] == ["-1", "-1", "1"]
    assert {s["discriminant"] for s in doc["slices"]} == {"5"}


def test_slice_non_split(capsys):
    code, _, err = run(capsys, "slice", SPLIT_CUBE, "--algebra", '{"shape": {"quad_pair": "5"}}')
    assert code == 2


def test_check_axioms(capsys):
    code, doc = run_json(capsys, "check-axioms", SPLIT_CUBE, "--samples", "20")
    assert code == 0 and doc["ok"] and doc["samples"] == 20


def test_check_axioms_failure_is_replayable(capsys, monkeypatch):
    real = cli.axiom_failure
    monkeypatch.setattr("twistcube.composition.axiom_failure", lambda C, v, lam: "forced")
    code, doc = run_json(capsys, "check-axioms", SPLIT_CUBE, "--samples", "5")
    assert code == 3
    assert doc["axiom"] == "forced"
    ce = doc["counterexample"]
    assert set(ce["witness"]) == {"v", "lambda"}
    monkeypatch.setattr("twistcube.composition.axiom_failure", real)
    code, doc = run_json(capsys, "check-axioms", json.dumps(ce))
    assert code == 0 and doc["ok"] and doc["samples"] == 1


def test_tits_both_directions(capsys):
    code, doc = run_json(capsys, "tits", '{"a":"1","e":["0","0","0"],"f":["-1","-1","-1"],"b":"-1"}')
    assert code == 0
    assert doc["pair"]["nu"] == {"x": "1/2", "y": "-1/2", "d": "-3"}
    assert doc["norm_e"] == doc["norm_nu"] == "1"
    code, back = run_json(capsys, "tits", json.dumps(doc["pair"]))
    assert code == 0
    assert back["cube"]["f"] == ["-1", "-1", "-1"] and back["cube"]["b"] == "-1"


def test_tits_norm_violation(capsys):
    code, _, err = run(capsys, "tits", '{"e":["1","2","3"],"nu":{"x":"1","y":"1","d":"5"}}')
    assert code == 2 and "norm" in err


def test_springer(capsys):
    code, doc = run_json(capsys, "springer", '{"model": "hermitian", "d": "5"}', "--samples", "10")
    assert code == 0
    assert doc["classes"] == {"K_C": "5", "K_E": "1", "K_J": "5"}
    assert doc["axioms"] and doc["orthogonal"] and doc["product_trivial"]


def test_springer_bad_model(capsys):
    code, _, _ = run(capsys, "springer", '{"model": "octonion"}')
    assert code == 2


def test_gauss(capsys):
    code, doc = run_json(capsys, "gauss", '{"f": [1, 1, 1], "b": 1}')
    assert code == 0
    assert doc["discriminant"] == 5
    assert doc["module_norms"] == ["-1", "-1", "-1"]
    assert doc["delta_norm"] == "-1"
    assert all(doc["identities"].values())
    assert doc["projective"]


@pytest.mark.parametrize("doc", ['{"f": [1, 1, 2], "b": 1}', '{"f": [0, 1, 1], "b": 1}', '{"f": ["1", 1, 1], "b": 1}', '{"b": 1}'])
def test_gauss_bad_input(capsys, doc):
    code, _, _ = run(capsys, "gauss", doc)
    assert code == 2


def test_orbits_csv(capsys, tmp_path):
    out = tmp_path / "orbits.csv"
    code, _, _ = run(capsys, "orbits", "--field", "Fp:5", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "orbit_id,size,delta_class,representative"
    assert [line.split(",")[1] for line in lines[1:]] == ["216000", "96000"]


def test_orbits_needs_prime_field(capsys):
    code, _, _ = run(capsys, "orbits")
    assert code == 2


def test_verify_deterministic(capsys):
    argv = ["verify", "--field", "Fp:7", "--samples", "1000", "--seed", "42"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["ok"] and doc["seed"] == 42
    assert {r["identity"] for r in doc["results"]} == set(verify.IDENTITIES)
    assert all(r["passed"] == r["samples"] == 1000 for r in doc["results"])


def test_verify_counterexample_replays(capsys, monkeypatch):
    real = verify.evaluate
    monkeypatch.setattr(verify, "evaluate", lambda name, inputs: name != "beta2" and real(name, inputs))
    code, doc = run_json(capsys, "verify", "--field", "Fp:5", "--samples", "3")
    assert code == 3
    ce = doc["counterexamples"][0]
    assert ce["identity"] == "beta2"
    monkeypatch.setattr(verify, "evaluate", real)
    code, doc = run_json(capsys, "verify", json.dumps(ce))
    assert code == 0 and doc == {"ok": True, "replayed": "beta2"}


def test_malformed_json_reports_position(capsys):
    code, out, err = run(capsys, "invariant", '{"a": "1", "e": [')
    assert code == 2
    assert "line 1" in err and "column" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["invariant", '{"a":"1"}'],
        ["invariant", SPLIT_CUBE, "--field", "Fp:4"],
        ["invariant", SPLIT_CUBE, "--field", "R"],
        ["invariant"],
        ["verify", '{"identity": "nope"}'],
    ],
)
def test_input_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_input_from_file_and_stdin(capsys, tmp_path, monkeypatch):
    path = tmp_path / "cube.json"
    path.write_text(SPLIT_CUBE)
    code, doc = run_json(capsys, "invariant", str(path))
    assert code == 0 and doc["delta"] == "5"

    monkeypatch.setattr(sys, "stdin", io.StringIO(SPLIT_CUBE))
    code, doc = run_json(capsys, "invariant", "-")
    assert code == 0 and doc["delta"] == "5"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twistcube", "invariant", SPLIT_CUBE], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"class": "5", "delta": "5"}


def test_outputs_reparse(capsys):
    for argv in (["invariant", SPLIT_CUBE], ["reduce", SPLIT_CUBE], ["to-comp", SPLIT_CUBE], ["slice", SPLIT_CUBE]):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert json.loads(out) is not None
