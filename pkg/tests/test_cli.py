import json
import subprocess
import sys
from pathlib import Path

import pytest

from fuzzcomp.artifacts import parse_artifact, serialize
from fuzzcomp.cli import main
from fuzzcomp.core import FuzzySet

DATA = Path(__file__).resolve().parent.parent / "examples_data"
ROUND_TRIP = [
    "copier.json",
    "one_step_writer.json",
    "fuzzy_coin.json",
    "proof_matches_input.json",
    "gate_circuit.json",
    "two_gate_circuit.json",
    "input_one.json",
    "input_echo.json",
    "inputs.json",
    "proofs_len1.json",
    "fuzzy_string.json",
    "increment_tm.json",
]


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", ROUND_TRIP)
def test_round_trip_is_byte_identical(name, tmp_path):
    path = DATA / name
    text = serialize(parse_artifact(path))
    assert text == path.read_text(encoding="utf-8")
    again = tmp_path / name
    again.write_text(text, encoding="utf-8")
    assert serialize(parse_artifact(again)) == text


def test_validate_valid_fuzzy_string(capsys):
    code, out, err = cli(capsys, "validate", DATA / "fuzzy_string.json")
    assert code == 0
    assert json.loads(out)["report"]["ok"]
    assert err.strip() == "validate: valid"


def test_degree_out_of_range(capsys):
    code, out, _ = cli(capsys, "validate", DATA / "bad_degree.json")
    assert code == 2
    assert "degree out of [0,1]" in json.loads(out)["error"]


def test_duplicate_output_label(capsys):
    code, out, _ = cli(capsys, "validate", DATA / "bad_circuit_duplicate_output.json")
    assert code == 1
    assert [v["kind"] for v in json.loads(out)["report"]["violations"]] == ["duplicate-output"]


def test_malformed_json_names_the_line(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "pairs": [\n    ["0", "1/2"],\n  ]\n}\n')
    code, out, _ = cli(capsys, "validate", bad)
    assert code == 2
    assert "line 4" in json.loads(out)["error"]


def test_check_af_identity_and_mutated(capsys):
    code, out, _ = cli(capsys, "check-af", "--reduction", DATA / "af_identity.json")
    assert code == 0 and json.loads(out)["report"]["ok"]
    code, out, _ = cli(capsys, "check-af", "--reduction", DATA / "af_mutated.json")
    report = json.loads(out)["report"]
    assert code == 1
    assert report["violations"] and all("index" in v["witness"] for v in report["violations"])


def test_check_apf(capsys):
    assert cli(capsys, "check-apf", "--reduction", DATA / "apf_identity.json")[0] == 0
    code, out, _ = cli(capsys, "check-apf", "--reduction", DATA / "apf_bad_g.json")
    assert code == 1
    assert "3" in {v["kind"] for v in json.loads(out)["report"]["violations"]}


def test_unknown_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["run", "--frobnicate"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_missing_required_flag(capsys):
    code, out, _ = cli(capsys, "run", "--input", DATA / "input_one.json")
    assert code == 2
    assert "--machine" in json.loads(out)["error"]


def test_run_copier(capsys):
    code, out, err = cli(capsys, "run", "--machine", DATA / "copier.json", "--input", DATA / "input_one.json")
    assert code == 0
    doc = json.loads(out)
    assert FuzzySet.from_json(doc["result"]["output"]) == FuzzySet({"1": 1})
    assert "t=3" in err


def test_run_not_halting_exits_one(capsys):
    code, out, _ = cli(capsys, "run", "--machine", DATA / "copier.json", "--input", DATA / "input_one.json", "--max-steps", 1)
    assert code == 1
    assert "error" in json.loads(out)


def test_eval_and_sat(capsys):
    code, out, _ = cli(capsys, "eval-circuit", "--circuit", DATA / "gate_circuit.json", "--input", DATA / "input_zero.json")
    assert code == 0
    code, out, _ = cli(capsys, "sat", "--circuit", DATA / "gate_circuit.json", "--via-fpvs")
    doc = json.loads(out)
    assert code == 0
    assert doc["verdict"] == doc["via_fpvs"]


def test_compile_with_equivalence(capsys):
    code, out, _ = cli(
        capsys, "compile", "--machine", DATA / "copier.json", "--n", 2, "--t", 4, "--inputs", DATA / "inputs.json"
    )
    assert code == 0
    assert json.loads(out)["equivalence"]["ok"]


def test_verify_and_reduce(capsys):
    args = ["--machine", DATA / "proof_matches_input.json", "--input", DATA / "input_one.json"]
    code, out, _ = cli(capsys, "verify-fpvs", *args, "--proofs", DATA / "proofs_len1.json", "--max-steps", 4)
    assert code == 0
    assert json.loads(out)["verdict"] == {"pairs": [["1", "1/1"]], "universe": "verdict"}
    code, out, _ = cli(capsys, "reduce-to-sat", *args, "--n", 1, "--t", 4)
    assert code == 0
    item = json.loads(out)["report"]["items"][0]
    assert item["ok"] and item["F"] == item["reduced"]


def test_demos(capsys):
    assert cli(capsys, "demo", "np-sat", "--cnf", DATA / "sat.cnf")[0] == 0
    code, out, _ = cli(capsys, "demo", "np-sat", "--cnf", DATA / "unsat.cnf")
    assert code == 0 and not json.loads(out)["brute_force_sat"]
    code, out, _ = cli(capsys, "demo", "crisp-fn", "--machine", DATA / "increment_tm.json", "--input", "011")
    assert code == 0 and json.loads(out)["crisp"] == "100"


def test_seeded_demo_is_reproducible(capsys):
    a = cli(capsys, "demo", "np-sat", "--seed", 4)[1]
    b = cli(capsys, "demo", "np-sat", "--seed", 4)[1]
    assert a == b


def test_subprocess_output_is_byte_identical():
    cmd = [sys.executable, "-m", "fuzzcomp.cli", "run", "--machine", str(DATA / "fuzzy_coin.json"),
           "--input", str(DATA / "input_echo.json"), "--trace"]
    first = subprocess.run(cmd, capture_output=True, check=True)
    second = subprocess.run(cmd, capture_output=True, check=True)
    assert first.stdout == second.stdout and first.stdout
