"""Write the sample JSON artifacts under examples_data/."""

import argparse
from fractions import Fraction
from pathlib import Path

from fuzzcomp import samples
from fuzzcomp.artifacts import crisp_tm_to_json, dumps
from fuzzcomp.catalog import binary_increment_tm
from fuzzcomp.core import FuzzySet, FuzzyString, crisp_embed


def build() -> dict:
    half = Fraction(1, 2)
    echo_input = FuzzySet({"0": 1, "1": half})
    bad_circuit = samples.gate_example().to_json()
    bad_circuit["levels"][0].append(dict(bad_circuit["levels"][0][0]))
    fuzzy_string = FuzzyString(FuzzySet({"0110": 1, "0111": Fraction(3, 4), "0010": Fraction(1, 2)}), "0110")
    instances = [crisp_embed("0"), crisp_embed("1"), echo_input, FuzzySet({"01": Fraction(2, 3), "1": Fraction(1, 4)})]
    copier = samples.copier().to_json()
    return {
        "copier.json": copier,
        "one_step_writer.json": samples.one_step_writer().to_json(),
        "fuzzy_coin.json": samples.fuzzy_coin().to_json(),
        "proof_matches_input.json": samples.proof_matches_input().to_json(),
        "input_one.json": crisp_embed("1").to_json(),
        "input_zero.json": crisp_embed("0").to_json(),
        "input_echo.json": echo_input.to_json(),
        "inputs.json": [s.to_json() for s in instances],
        "proofs_len1.json": {"kind": "proofspace", "alphabet": "01", "length": 1, "exact": True},
        "gate_circuit.json": samples.gate_example().to_json(),
        "two_gate_circuit.json": samples.two_gate_example().to_json(),
        "bad_circuit_duplicate_output.json": bad_circuit,
        "bad_degree.json": {"universe": "", "pairs": [["0", "3/2"]]},
        "fuzzy_string.json": fuzzy_string.to_json(),
        "increment_tm.json": crisp_tm_to_json(binary_increment_tm()),
        "af_identity.json": {"kind": "af-check", "name": "identity", "F": copier, "G": copier, "gamma": "1", "maxSteps": 32, "instances": [s.to_json() for s in instances]},
        "af_mutated.json": {"kind": "af-check", "name": "zero-g", "F": copier, "G": copier, "g": "zero", "gamma": "1", "maxSteps": 32, "instances": [s.to_json() for s in instances]},
        "apf_identity.json": {"kind": "apf-check", "name": "identity", "A": _toy_max(), "c": "1", "r": ["3/2", "2"]},
        "apf_bad_g.json": {"kind": "apf-check", "name": "bad-g", "A": _toy_max(), "g": {"table": {"a": {"x": "nope", "y": "y"}, "b": {"z": "z"}}}, "c": "1", "r": ["2"]},
    }


def _toy_max() -> dict:
    return {
        "name": "toy-max",
        "goal": "max",
        "instances": ["a", "b"],
        "solutions": {"a": ["x", "y"], "b": ["z"]},
        "measure": {"a": {"x": 3, "y": 7}, "b": {"z": 5}},
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "examples_data"))
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, doc in build().items():
        (out / name).write_text(dumps(doc), encoding="utf-8")
    (out / "sat.cnf").write_text("c (x1 or x2) and (not x1 or x2)\np cnf 2 2\n1 2 0\n-1 2 0\n", encoding="utf-8")
    (out / "unsat.cnf").write_text("c x1 and not x1\np cnf 1 2\n1 0\n-1 0\n", encoding="utf-8")
    print(f"wrote {len(build()) + 2} files to {out}")


if __name__ == "__main__":
    main()
