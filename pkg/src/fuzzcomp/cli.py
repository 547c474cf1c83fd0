"""fuzzcomp command-line front end.

Reports go to stdout as canonical JSON; a one-line summary goes to stderr.
Exit status: 0 success, 1 a check failed, 2 usage or schema error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import artifacts
from .artifacts import ValidationError, dumps, load_doc, parse_artifact, parse_fraction
from .catalog import (
    brute_force_sat,
    cnf_guess_and_check_ntm,
    crisp_fn_to_fuzzy,
    encode_cnf,
    np_verdict,
    parse_dimacs,
    run_crisp_tm,
)
from .circuits import all_crisp_inputs, circuit_size, evaluate
from .compiler import circuit_output, compile_dftm_to_circuit, equivalence_check
from .core import FuzzySet, ToleranceParameter, crisp_embed
from .dftm import DFTM, run
from .errors import FuzzCompError, NotHalted, SchemaError
from .fpvs import FPVS, SAT_INPUT, ProofSpace, fuzzy_circuit_sat, outcome, sat_verifier_steps, sat_via_fpvs
from .generators import random_cnf
from .reductions import (
    AFReduction,
    APFReduction,
    check_af,
    check_apf,
    circuit_sat_oracle,
    completeness_reduction_to_circuit_sat,
    fpvs_oracle,
)
from .report import Report


class CheckFailed(Exception):
    pass


def _emit(doc, summary: str) -> None:
    sys.stdout.write(dumps(doc))
    print(summary, file=sys.stderr)


def _need(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise SchemaError(f"--{name.replace('_', '-')} is required for {args.command}")
    return value


def _machine(args, cls=DFTM):
    M = parse_artifact(_need(args, "machine"))
    if not isinstance(M, cls):
        raise SchemaError(f"{args.machine}: expected a {cls.__name__} artifact")
    return M


def _fuzzy_input(args) -> FuzzySet:
    s = parse_artifact(_need(args, "input"))
    if not isinstance(s, FuzzySet):
        s = getattr(s, "quantity", None)
        if s is None:
            raise SchemaError(f"{args.input}: expected a fuzzy set or fuzzy string")
    return s


def _inputs(path) -> list:
    value = parse_artifact(path)
    if isinstance(value, ProofSpace):
        return list(value)
    if not isinstance(value, list):
        raise SchemaError(f"{path}: expected a JSON array of fuzzy sets")
    return value


# -- commands -------------------------------------------------------------------


def cmd_run(args):
    M = _machine(args)
    result = run(M, _fuzzy_input(args), args.max_steps, trace=args.trace)
    doc = {"command": "run", "machine": M.name, "result": result.to_json()}
    return doc, f"halted at t={result.time}, |supp|={len(result.output)}"


def cmd_eval_circuit(args):
    C = parse_artifact(_need(args, "circuit"), "circuit")
    s = _fuzzy_input(args)
    compiled = "layout" in C.meta and "input" not in C.meta["compiled_from"]
    out = circuit_output(C, s) if compiled else evaluate(C, s)
    doc = {"command": "eval-circuit", "output": out, "size": circuit_size(C), "depth": C.depth}
    return doc, f"|supp|={len(out)}"


def cmd_compile(args):
    M = _machine(args)
    C = compile_dftm_to_circuit(M, _need(args, "n"), _need(args, "t"))
    layout = C.meta["layout"]
    doc = {
        "command": "compile",
        "circuit": C.to_json(),
        "depth": C.depth,
        "width": layout.width,
        "fields": [list(f) for f in layout.fields],
        "size": circuit_size(C),
    }
    if args.inputs:
        report = equivalence_check(M, C, _inputs(args.inputs), args.t)
        doc["equivalence"] = report
        if not report.ok:
            raise CheckFailed(doc)
    return doc, f"compiled {C.depth} levels of width {layout.width}"


def cmd_sat(args):
    C = parse_artifact(_need(args, "circuit"), "circuit")
    space = _inputs(args.inputs) if args.inputs else all_crisp_inputs(C)
    verdict, i1, i0 = fuzzy_circuit_sat(C, space, with_witnesses=True)
    doc = {"command": "sat", "verdict": verdict, "witness": {"1": space[i1], "0": space[i0]}, "inputs": len(space)}
    if args.via_fpvs:
        N = sat_via_fpvs(C)
        proofs = [crisp_embed(next(iter(s.support()))) for s in space]
        via = outcome(N, SAT_INPUT, proofs, sat_verifier_steps(C))
        doc["via_fpvs"] = via
        doc["agree"] = via == verdict
        if via != verdict:
            raise CheckFailed(doc)
    return doc, f"b(1)={verdict('1')} b(0)={verdict('0')}"


def _proof_space(args, N: FPVS):
    if args.proofs:
        return _inputs(args.proofs)
    return list(ProofSpace.crisp(N.proof_alphabet, args.proof_len, exact=True))


def cmd_verify_fpvs(args):
    N = _machine(args, FPVS)
    space = _proof_space(args, N)
    verdict, i1, i0 = outcome(N, _fuzzy_input(args), space, args.max_steps, with_witnesses=True)
    doc = {"command": "verify-fpvs", "verdict": verdict, "witness": {"1": space[i1], "0": space[i0]}, "proofs": len(space)}
    return doc, f"b(1)={verdict('1')} b(0)={verdict('0')}"


def _solver(doc, max_steps: int, where: str):
    """A fuzzy function given as a machine document or a rule name."""
    if doc == "identity":
        return lambda s: s
    M = load_doc(doc, where=where)
    return lambda s: run(M, s, max_steps).output


def _answer_map(doc, where: str):
    if doc == "identity":
        return lambda s, z: z
    if doc == "zero":
        return lambda s, z: FuzzySet((), z.universe)
    if isinstance(doc, dict) and "relabel" in doc:
        table = doc["relabel"]
        return lambda s, z: FuzzySet({table.get(w, w): d for w, d in z}, z.universe)
    raise SchemaError(f"{where}: g must be \"identity\", \"zero\" or {{\"relabel\": {{...}}}}")


def cmd_check_af(args):
    bundle = parse_artifact(_need(args, "reduction"), "af-check")
    where = str(args.reduction)
    try:
        steps = int(bundle.get("maxSteps", args.max_steps))
        F = _solver(bundle["F"], steps, f"{where}: F")
        G = _solver(bundle["G"], steps, f"{where}: G")
        f = _solver(bundle.get("f", "identity"), steps, f"{where}: f")
        g = _answer_map(bundle.get("g", "identity"), f"{where}: g")
        gamma_text = args.gamma or str(bundle.get("gamma", "1"))
        instances = _inputs(args.inputs) if args.inputs else load_doc(bundle["instances"], "fuzzysets", where)
    except KeyError as exc:
        raise SchemaError(f"{where}: missing field {exc.args[0]!r}") from exc
    red = AFReduction(f, g, ToleranceParameter.parse(gamma_text), bundle.get("name", "reduction"))
    report = check_af(F, G, red, instances, jobs=args.jobs)
    doc = {"command": "check-af", "report": report}
    if not report.ok:
        raise CheckFailed(doc)
    return doc, f"{len(report.items)} instances pass"


def _table_map(doc, where: str, arity: int):
    if doc == "identity":
        return (lambda s, r: s) if arity == 2 else (lambda s, u, r: u)
    if isinstance(doc, dict) and "table" in doc:
        table = doc["table"]
        if arity == 2:
            return lambda s, r: table.get(s)
        return lambda s, u, r: table.get(s, {}).get(u)
    raise SchemaError(f"{where}: expected \"identity\" or {{\"table\": ...}}")


def cmd_check_apf(args):
    bundle = parse_artifact(_need(args, "reduction"), "apf-check")
    where = str(args.reduction)
    try:
        A = artifacts.opt_problem_from_json(bundle["A"])
        B = artifacts.opt_problem_from_json(bundle["B"]) if "B" in bundle else A
        red = APFReduction(
            _table_map(bundle.get("f", "identity"), f"{where}: f", 2),
            _table_map(bundle.get("g", "identity"), f"{where}: g", 3),
            parse_fraction(bundle.get("c", "1")),
            bundle.get("name", "reduction"),
        )
        r_values = [parse_fraction(r) for r in bundle.get("r", ["2"])]
    except KeyError as exc:
        raise SchemaError(f"{where}: missing field {exc.args[0]!r}") from exc
    report = check_apf(A, B, red, A.instances, r_values)
    doc = {"command": "check-apf", "report": report}
    if not report.ok:
        raise CheckFailed(doc)
    return doc, f"{len(report.items)} (instance, r) pairs pass"


def cmd_reduce_to_sat(args):
    N = _machine(args, FPVS)
    s = _fuzzy_input(args)
    n = args.n if args.n is not None else max((len(x) for x in s.support()), default=0)
    t = _need(args, "t")
    red = completeness_reduction_to_circuit_sat(N, n, t, args.proof_len)
    report = check_af(fpvs_oracle(N, args.proof_len, t), circuit_sat_oracle, red, [s])
    C = red.f(s)
    doc = {
        "command": "reduce-to-sat",
        "circuit": {"inputs": len(C.inputs), "depth": C.depth, "width": C.meta["layout"].width, "size": circuit_size(C)},
        "report": report,
    }
    if not report.ok:
        raise CheckFailed(doc)
    return doc, "circuit SAT verdict equals verifier outcome"


def cmd_validate(args):
    report = Report("validate", notes={"path": args.path})
    try:
        value = parse_artifact(args.path, args.kind)
    except ValidationError as exc:
        report.violations.extend(exc.report.violations)
        raise CheckFailed({"command": "validate", "report": report})
    report.notes["kind"] = args.kind or artifacts.detect_kind(json.loads(Path(args.path).read_text(encoding="utf-8")))
    report.notes["canonical"] = artifacts.serialize(value)
    return {"command": "validate", "report": report}, "valid"


def cmd_demo(args):
    if args.demo == "np-sat":
        if args.cnf:
            num_vars, clauses = parse_dimacs(Path(args.cnf).read_text(encoding="utf-8"))
        else:
            rng = random.Random(args.seed)
            num_vars = rng.randint(3, 8)
            clauses = random_cnf(rng, num_vars, rng.randint(num_vars, 5 * num_vars))
        ntm = cnf_guess_and_check_ntm(num_vars, max(len(clauses), 1))
        result = np_verdict(ntm, encode_cnf(clauses))
        sat = brute_force_sat(num_vars, clauses)
        doc = {
            "command": "demo np-sat",
            "variables": num_vars,
            "clauses": clauses,
            "verdict": result.output,
            "time": result.time,
            "brute_force_sat": sat,
            "agree": (result.output("1") == 1) == sat,
        }
        if not doc["agree"]:
            raise CheckFailed(doc)
        return doc, f"satisfiable={sat}"
    tm = parse_artifact(_need(args, "machine"), "crisp-tm") if args.machine else artifacts._crisp_tm_from_json({"builtin": "increment"})
    x = args.input or ""
    y = run_crisp_tm(tm, x, args.max_steps)
    out = run(crisp_fn_to_fuzzy(tm), crisp_embed(x), args.max_steps).output
    doc = {"command": "demo crisp-fn", "machine": tm.name, "input": x, "crisp": y, "fuzzy": out, "agree": out == crisp_embed(y)}
    if not doc["agree"]:
        raise CheckFailed(doc)
    return doc, f"f({x!r}) = {y!r}"


COMMANDS = {
    "run": cmd_run,
    "eval-circuit": cmd_eval_circuit,
    "compile": cmd_compile,
    "sat": cmd_sat,
    "verify-fpvs": cmd_verify_fpvs,
    "check-af": cmd_check_af,
    "check-apf": cmd_check_apf,
    "reduce-to-sat": cmd_reduce_to_sat,
    "validate": cmd_validate,
    "demo": cmd_demo,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", help="machine JSON (dftm, fpvs or crisp-tm)")
    common.add_argument("--circuit", help="circuit JSON")
    common.add_argument("--input", help="fuzzy input JSON (demo crisp-fn: a crisp string)")
    common.add_argument("--inputs", help="JSON array of fuzzy sets")
    common.add_argument("--proofs", help="JSON array of fuzzy proofs or a proof-space object")
    common.add_argument("--proof-len", type=int, default=1, help="crisp proof length when --proofs is absent")
    common.add_argument("--reduction", help="reduction bundle JSON for check-af / check-apf")
    common.add_argument("--max-steps", type=int, default=64)
    common.add_argument("--n", type=int, help="input length bound for compilation")
    common.add_argument("--t", type=int, help="step bound for compilation")
    common.add_argument("--gamma", help="tolerance override, e.g. 1, 3/2, poly:1,1, exp:2")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--trace", action="store_true", help="include configuration traces")

    parser = argparse.ArgumentParser(prog="fuzzcomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="run a DFTM on a fuzzy input")
    sub.add_parser("eval-circuit", parents=[common], help="evaluate a fuzzy circuit")
    sub.add_parser("compile", parents=[common], help="compile a DFTM into a circuit")
    p = sub.add_parser("sat", parents=[common], help="Fuzzy-Circuit-SAT by enumeration")
    p.add_argument("--via-fpvs", action="store_true", help="also solve through the circuit-evaluating verifier")
    sub.add_parser("verify-fpvs", parents=[common], help="outcome of a verifier over a proof space")
    sub.add_parser("check-af", parents=[common], help="check an approximate fuzzy reduction")
    sub.add_parser("check-apf", parents=[common], help="check an approximation-preserving reduction")
    sub.add_parser("reduce-to-sat", parents=[common], help="reduce a verifier instance to circuit SAT")
    p = sub.add_parser("validate", parents=[common], help="validate an artifact file")
    p.add_argument("path")
    p.add_argument("--kind", choices=artifacts.KINDS)
    p = sub.add_parser("demo", parents=[common], help="worked embeddings")
    p.add_argument("demo", choices=("np-sat", "crisp-fn"))
    p.add_argument("--cnf", help="DIMACS file for np-sat")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, summary = COMMANDS[args.command](args)
    except CheckFailed as exc:
        _emit(exc.args[0], f"{args.command}: check failed")
        return 1
    except ValidationError as exc:
        _emit({"command": args.command, "error": str(exc), "report": exc.report}, f"{args.command}: invalid artifact")
        return 2
    except NotHalted as exc:
        _emit({"command": args.command, "error": str(exc)}, f"{args.command}: {exc}")
        return 1
    except (FuzzCompError, ValueError) as exc:
        _emit({"command": args.command, "error": str(exc)}, f"{args.command}: error: {exc}")
        return 2
    _emit(doc, f"{args.command}: {summary}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
