"""CLI contract: outputs, exit codes, determinism, error JSON."""

import json

import pytest

from cyclosynth.cli import run
from cyclosynth.gates import Regime, gate_matrix, sym_H
from cyclosynth.linalg import matrix_to_json


def invoke(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def h9_file(tmp_path):
    path = tmp_path / "h9.json"
    path.write_text(json.dumps(matrix_to_json(gate_matrix(sym_H(Regime.QUTRIT_D9)))))
    return str(path)


def test_gde_inline_json(capsys):
    code, out = invoke(capsys, "gde", "--ring", "9", "--elem", '{"ring":9,"coeffs":[1,1,1,0,0,0]}')
    assert (code, out) == (0, "2\n")


def test_sde_variants(capsys, h9_file):
    code, out = invoke(
        capsys, "sde", "--ring", "9", "--elem", '{"ring":9,"coeffs":[1,1,1,0,0,0],"denom_exp":6}'
    )
    assert (code, out) == (0, "4\n")
    code, out = invoke(capsys, "sde", "--ring", "9", "--mat", h9_file)
    assert (code, out) == (0, "3\n")


def test_taylor_output(capsys):
    code, out = invoke(capsys, "taylor", "--ring", "9", "--elem", '{"ring":9,"coeffs":[1,1,1,0,0,0]}')
    assert code == 0
    doc = json.loads(out)
    assert doc["ring"] == 9 and doc["entries"][:2] == [0, 0] and len(doc["entries"]) == 6


def test_word_matrix_verify_cycle(capsys, tmp_path):
    code, out = invoke(capsys, "word2mat", "--word", "H T^1 H T^3 H")
    assert code == 0
    mat = tmp_path / "u.json"
    mat.write_text(out)
    code, out = invoke(capsys, "verify", "--word", "H T^1 H T^3 H", "--mat", str(mat))
    assert (code, out) == (0, "true\n")
    code, out = invoke(capsys, "verify", "--word", "H T^2 H T^3 H", "--mat", str(mat))
    assert (code, out) == (0, "false\n")  # a false verify still exits 0


def test_verify_empty_word_against_identity(capsys, tmp_path):
    code, out = invoke(capsys, "word2mat", "--word", "", "--regime", "qutrit-d")
    assert code == 0
    mat = tmp_path / "i.json"
    mat.write_text(out)
    code, out = invoke(capsys, "verify", "--word", "", "--mat", str(mat))
    assert (code, out) == (0, "true\n")


def test_synth_emits_verifiable_word(capsys, tmp_path, h9_file):
    code, out = invoke(capsys, "synth", "--regime", "qutrit-d", "--mat", h9_file)
    assert code == 0
    word, summary = out.splitlines()
    assert json.loads(summary) == {"status": "complete"}
    code, out = invoke(capsys, "verify", "--word", word, "--mat", h9_file)
    assert (code, out) == (0, "true\n")


def test_synth_regime_mismatch_is_an_error(capsys, h9_file):
    code, out = invoke(capsys, "synth", "--regime", "qubit", "--mat", h9_file)
    assert code == 1
    assert json.loads(out)["error"] == "ValueError"


def test_reduce_step_and_delta(capsys, h9_file):
    col = json.loads(open(h9_file).read())
    vec = json.dumps({"ring": 9, "denom_exp": 3, "entries": [r[0] for r in col["rows"]]})
    code, out = invoke(capsys, "reduce-step", "--regime", "qutrit-d", "--vec", vec)
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "step" and doc["sde_after"] < doc["sde_before"] == 3
    code, out = invoke(capsys, "delta", "--vec", vec)
    assert (code, out) == (0, "0\n")


def test_obstructed_vector_exits_two(capsys):
    vec = json.dumps(
        {
            "ring": 9,
            "denom_exp": 1,
            "entries": [[2, -2, 1, 0, 0, 0], [1, 0, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0]],
        }
    )
    code, out = invoke(capsys, "delta", "--vec", vec)
    assert (code, out) == (0, "2\n")
    code, out = invoke(capsys, "reduce-step", "--regime", "qutrit-d", "--vec", vec)
    assert code == 2
    assert json.loads(out) == {"status": "obstructed", "delta": 2}


def test_census_output_shape(capsys):
    code, out = invoke(capsys, "enumerate", "--sde", "0")
    assert code == 0
    lines = out.splitlines()
    assert json.loads(lines[-1]) == {"f": 0, "mode": "exact", "count": 54}
    assert len(lines) == 55
    head = json.loads(lines[0])
    assert head["ring"] == 9 and head["denom_exp"] == 0


def test_census_determinism(capsys):
    _, first = invoke(capsys, "enumerate", "--sde", "1", "--rescaled")
    _, second = invoke(capsys, "enumerate", "--sde", "1", "--rescaled")
    assert first == second
    assert json.loads(first.splitlines()[-1]) == {"f": 1, "mode": "rescaled", "count": 0}


def test_random_word_is_seed_deterministic(capsys):
    args = ("random-word", "--regime", "qubit", "--len", "9", "--seed", "42")
    _, first = invoke(capsys, *args)
    _, second = invoke(capsys, *args)
    assert first == second
    code, other = invoke(capsys, "random-word", "--regime", "qubit", "--len", "9", "--seed", "43")
    assert code == 0 and other != first


def test_selftest_passes(capsys):
    code, out = invoke(capsys, "selftest")
    assert code == 0
    assert "FAIL" not in out
    assert out.count("ok:") == 11


def test_error_contract(capsys, tmp_path):
    code, out = invoke(capsys, "gde", "--ring", "8", "--elem", '{"ring":9,"coeffs":[1,1,1,0,0,0]}')
    assert code == 1 and json.loads(out)["error"] == "ValueError"
    code, out = invoke(capsys, "gde", "--ring", "9", "--elem", str(tmp_path / "missing.json"))
    assert code == 1 and json.loads(out)["error"] == "FileNotFoundError"
    code, out = invoke(capsys, "frobnicate")
    assert code == 1 and json.loads(out)["error"] == "UsageError"
    code, out = invoke(capsys, "gde", "--ring", "9", "--elem", '{"ring":9,"coeffs":[0,0,0,0,0,0]}')
    assert code == 1 and json.loads(out)["error"] == "ValueError"  # gde of zero


def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    capsys.readouterr()
