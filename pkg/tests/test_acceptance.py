"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the PASS/FAIL lines are
written straight to the terminal. Runs shared between criteria (the output
support bound reuses the machine runs of the compiler, NP and crisp-function
criteria) are computed once and cached.
"""

import functools
import random
import subprocess
import sys
import time
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest

from fuzzcomp.catalog import (
    binary_increment_tm,
    cnf_guess_and_check_ntm,
    crisp_fn_to_fuzzy,
    encode_cnf,
    increment_oracle,
    np_verdict,
    run_crisp_tm,
)
from fuzzcomp.circuits import all_crisp_inputs
from fuzzcomp.compiler import circuit_output, compile_dftm_to_circuit
from fuzzcomp.core import FuzzySet, ToleranceParameter, crisp_embed, gamma_approximates
from fuzzcomp.dftm import run
from fuzzcomp.errors import NotHalted
from fuzzcomp.fpvs import FPVS, SAT_INPUT, ProofSpace, fuzzy_circuit_sat, outcome, sat_verifier_steps, sat_via_fpvs
from fuzzcomp.generators import (
    random_circuit,
    random_cnf,
    random_dftm,
    random_fpvs,
    random_fuzzy_input,
    random_fuzzy_set,
    random_table_problem,
    strings,
)
from fuzzcomp.operators import check_safety, standard_tuple
from fuzzcomp.reductions import (
    AFReduction,
    check_af,
    circuit_sat_oracle,
    completeness_reduction_to_circuit_sat,
    compose_af,
    fpvs_oracle,
    identity_reduction,
)
from oracles import Diverged, binary_successor, satisfiable, verifier_branch_outcome

F = Fraction
DATA = Path(__file__).resolve().parent.parent / "examples_data"


@pytest.fixture
def verdict(capsys):
    """verdict(number, title, ok, detail, elapsed, limit): print the line, then assert."""

    def emit(number, title, ok, detail, elapsed=None, limit=None):
        timed = elapsed is not None and limit is not None
        in_time = not timed or elapsed < limit
        passed = ok and in_time
        clock = f" [{elapsed:.2f}s < {limit}s]" if timed else ""
        with capsys.disabled():
            print(f"\n{'PASS' if passed else 'FAIL'} criterion {number}: {title} -- {detail}{clock}")
        assert ok, detail
        assert in_time, f"took {elapsed:.2f}s, limit {limit}s"

    return emit


# -- cached suites ---------------------------------------------------------------


@functools.cache
def compiler_suite():
    """Random machines, each compiled once and compared with the simulator on its inputs."""
    rng = random.Random(20261016)
    start = time.perf_counter()
    machines, cases, mismatches, runs = 0, 0, [], []
    times = Counter()
    while machines < 25:
        k = rng.randint(1, 4)
        alphabet = tuple("0123"[:k])
        M = random_dftm(rng, input_alphabet=alphabet)
        t_bound = rng.randint(1, 8)
        inputs = [random_fuzzy_input(rng, alphabet, 4, 4) for _ in range(5)]
        halting = []
        for s in inputs:
            try:
                halting.append((s, run(M, s, t_bound)))
            except NotHalted:
                pass
        if not halting:
            continue
        machines += 1
        C = compile_dftm_to_circuit(M, 4, t_bound)
        for s, result in halting:
            cases += 1
            times[result.time] += 1
            runs.append((M, result))
            if circuit_output(C, s) != result.output:
                mismatches.append((machines, s))
    return {"machines": machines, "cases": cases, "mismatches": mismatches, "runs": runs,
            "times": dict(sorted(times.items())), "elapsed": time.perf_counter() - start}


@functools.cache
def np_suite():
    rng = random.Random(7)
    start = time.perf_counter()
    rows, runs = [], []
    for _ in range(20):
        n = rng.randint(3, 10)
        clauses = random_cnf(rng, n, round(4.3 * n))
        result = np_verdict(cnf_guess_and_check_ntm(n, len(clauses)), encode_cnf(clauses))
        runs.append((None, result))
        rows.append((n, result.output("1") == 1, satisfiable(n, clauses)))
    return {"rows": rows, "runs": runs, "elapsed": time.perf_counter() - start}


@functools.cache
def crisp_fn_suite():
    tm = binary_increment_tm()
    g = crisp_fn_to_fuzzy(tm)
    start = time.perf_counter()
    bad, runs = [], []
    targets = strings("01", 7)
    for x in strings("01", 6):
        y = run_crisp_tm(tm, x)
        if not y == increment_oracle(x) == binary_successor(x):
            bad.append((x, "crisp machine", y))
        result = run(g, crisp_embed(x), 200)
        runs.append((g, result))
        for z in targets:
            if (result.output == crisp_embed(z)) != (y == z):
                bad.append((x, z))
    return {"inputs": 2**7 - 1, "bad": bad, "runs": runs, "elapsed": time.perf_counter() - start}


# -- criteria --------------------------------------------------------------------


def test_criterion_1_safe_tuple_axioms(verdict):
    rng = random.Random(1)
    start = time.perf_counter()
    sample = [F(0), F(1)] + [F(rng.randint(0, d), d) for d in (rng.randint(1, 1000) for _ in range(9998))]
    standard = check_safety(standard_tuple("min", "max"), sample, 6)
    product = check_safety(standard_tuple("product", "max"), sample, 6)
    ok = standard.ok and "1" in product.kinds()
    detail = f"min/max violations={len(standard.violations)}, product flags {sorted(product.kinds())} on {len(sample)} degrees"
    verdict(1, "safe-tuple axioms", ok, detail, time.perf_counter() - start, 5)


def test_criterion_2_compiled_circuit_equals_run(verdict):
    suite = compiler_suite()
    ok = not suite["mismatches"] and suite["machines"] >= 25 and suite["cases"] >= 25
    detail = f"{suite['machines']} machines, {suite['cases']} halting cases, halting times {suite['times']}, mismatches={suite['mismatches']}"
    verdict(2, "compiled circuit output equals run output", ok, detail, suite["elapsed"], 60)


def test_criterion_3_circuit_sat_via_verifier(verdict):
    rng = random.Random(3)
    start = time.perf_counter()
    bad, sizes = [], Counter()
    for i in range(24):
        n = rng.randint(1, 8)
        C = random_circuit(rng, n, n_constants=rng.randint(0, 2))
        sizes[n] += 1
        space = ProofSpace.crisp("01", n, exact=True)
        if outcome(sat_via_fpvs(C), SAT_INPUT, space, sat_verifier_steps(C)) != fuzzy_circuit_sat(C, all_crisp_inputs(C)):
            bad.append(i)
    detail = f"24 circuits, input bits {dict(sorted(sizes.items()))}, mismatches={bad}"
    verdict(3, "Fuzzy-Circuit-SAT through the circuit-evaluating verifier", not bad, detail, time.perf_counter() - start, 60)


def coin_verifier():
    """Ignores the proof and writes 1 at degree 2/3 or 0 at degree 1/3, so both verdict bits are positive."""
    trans = []
    for sym in ("0", "1", "#"):
        trans.append((("q0", "¢", "¢", sym), ("acc", "¢", "1", 0, 0, 0), F(2, 3)))
        trans.append((("q0", "¢", "¢", sym), ("rej", "¢", "0", 0, 0, 0), F(1, 3)))
    return FPVS.from_transitions(
        trans, states=("q0", "acc", "rej"), input_alphabet=("0", "1"), work_alphabet=("¢", "$", "#", "0", "1"),
        output_alphabet=("0", "1"), initial="q0", finals={"acc", "rej"}, proof_alphabet=("0", "1"), name="coin",
    )


def test_criterion_4_completeness_reduction(verdict):
    rng = random.Random(4)
    start = time.perf_counter()
    t_bound = 4
    suite = [coin_verifier()]
    while len(suite) < 7:
        N = random_fpvs(rng)
        try:
            probe = [verifier_branch_outcome(N, crisp_embed(x), ["0", "1"], t_bound) for x in strings("01", 2)]
        except Diverged:
            continue
        # a verifier whose verdict is 0 everywhere would make the comparison vacuous
        if any(v["1"] or v["0"] for v in probe):
            suite.append(N)
    failures, instances, positive = [], 0, Counter()
    for k, N in enumerate(suite):
        inputs = [random_fuzzy_input(rng, "01", 2, 3) for _ in range(5)]
        try:
            wants = [verifier_branch_outcome(N, s, ["0", "1"], t_bound) for s in inputs]
        except Diverged:
            failures.append((k, "fuzzy input diverged"))
            continue
        red = completeness_reduction_to_circuit_sat(N, 2, t_bound)
        report = check_af(fpvs_oracle(N, 1, t_bound), circuit_sat_oracle, red, inputs)
        instances += len(inputs)
        if not report.ok:
            failures.append((k, report.kinds()))
        # the brute-force circuit SAT value must also equal the branch-walking oracle
        for s, want in zip(inputs, wants):
            got = circuit_sat_oracle(red.f(s))
            positive["b(1)>0"] += got("1") > 0
            positive["b(0)>0"] += got("0") > 0
            if (got("1"), got("0")) != (want["1"], want["0"]):
                failures.append((k, "branch oracle", s))
    detail = f"{len(suite)} verifiers, {instances} instances at gamma=1, {dict(positive)}, failures={failures}"
    verdict(4, "completeness reduction to Fuzzy-Circuit-SAT", not failures, detail, time.perf_counter() - start, 120)


def test_criterion_5_np_via_degree_one_nondeterminism(verdict):
    suite = np_suite()
    wrong = [row for row in suite["rows"] if row[1] != row[2]]
    sat = sum(row[2] for row in suite["rows"])
    ok = not wrong and 0 < sat < len(suite["rows"])
    detail = f"{len(suite['rows'])} formulas ({sat} SAT, {len(suite['rows']) - sat} UNSAT, up to {max(r[0] for r in suite['rows'])} vars), disagreements={wrong}"
    verdict(5, "b(1)=1 iff satisfiable", ok, detail, suite["elapsed"], 30)


def test_criterion_6_crisp_function_embedding(verdict):
    suite = crisp_fn_suite()
    detail = f"{suite['inputs']} inputs x with |x|<=6 against every y with |y|<=7, disagreements={suite['bad'][:5]}"
    verdict(6, "binary increment f(x)=y iff g(x^)=y^", not suite["bad"], detail, suite["elapsed"], 10)


def test_criterion_7_gamma_approximation_laws(verdict):
    rng = random.Random(7)
    start = time.perf_counter()
    universe = strings("01", 3)
    ladder = [
        ToleranceParameter.one(),
        ToleranceParameter.const(F(3, 2)),
        ToleranceParameter.const(2),
        ToleranceParameter.poly(2, 1),
        ToleranceParameter.exp(2, 2),
    ]
    # the ladder must be pointwise nondecreasing for the monotonicity check to mean anything
    assert all(lo(n) <= hi(n) for lo, hi in zip(ladder, ladder[1:]) for n in range(4))
    counts = Counter()
    for _ in range(1000):
        A = random_fuzzy_set(rng, universe, 5)
        # nudge A's degrees by a factor in [1/3, 3] so some pairs approximate and some do not
        B = FuzzySet({x: min(F(1), d * rng.choice([F(1, 3), F(1, 2), F(2, 3), F(1), F(3, 2), F(2), F(3)])) for x, d in A})
        if rng.random() < 0.2:
            B = FuzzySet(dict(B.as_dict(), **{rng.choice(universe): F(1, 7)}))
        counts["reflexive"] += gamma_approximates(A, A, ladder[0]) and gamma_approximates(B, B, ladder[0])
        results = []
        for g in ladder:
            ab = gamma_approximates(A, B, g)
            counts["symmetric"] += ab == gamma_approximates(B, A, g)
            results.append(ab)
        counts["monotone"] += all(not a or b for a, b in zip(results, results[1:]))
        counts["approximating at 2"] += results[2]
    ok = counts["reflexive"] == 1000 and counts["symmetric"] == 5000 and counts["monotone"] == 1000
    verdict(7, "gamma-approximation reflexivity, symmetry, monotonicity", ok, f"1000 pairs, {dict(counts)}", time.perf_counter() - start, 5)


def test_criterion_8_af_reflexivity_and_composition(verdict):
    rng = random.Random(8)
    start = time.perf_counter()
    words = strings("ab", 3)
    swap = str.maketrans("01", "10")
    failures = []
    for i in range(10):
        table = random_table_problem(rng, words)
        A = table.__getitem__
        if not check_af(A, A, identity_reduction("A"), words).ok:
            failures.append((i, "identity"))
        B = lambda y, A=A: A(y[::-1])
        C = lambda z, B=B: FuzzySet({w.translate(swap): d for w, d in B(z)})
        r1 = AFReduction(lambda s: s[::-1], lambda s, z: z, name="reverse", source="A", target="B")
        r2 = AFReduction(lambda y: y, lambda y, z: FuzzySet({w.translate(swap): d for w, d in z}), name="relabel", source="B", target="C")
        if not (check_af(A, B, r1, words).ok and check_af(B, C, r2, words).ok):
            failures.append((i, "parts"))
            continue
        if not check_af(A, C, compose_af(r1, r2), words).ok:
            failures.append((i, "composite"))
    detail = f"10 table problems over {len(words)} instances, failures={failures}"
    verdict(8, "AF reflexivity and composition at gamma=1", not failures, detail, time.perf_counter() - start, 30)


def test_criterion_9_output_support_bound(verdict):
    runs = compiler_suite()["runs"] + np_suite()["runs"] + crisp_fn_suite()["runs"]
    binary = len(("0", "1"))
    over = [
        (len(result.output), result.time)
        for M, result in runs
        if len(result.output) > (len(M.output_alphabet) if M is not None else binary) ** result.time
    ]
    verdict(9, "|supp(output)| <= |output alphabet|^time", not over, f"{len(runs)} runs checked, violations={over}")


CLI_COMMANDS = [
    ["run", "--machine", "copier.json", "--input", "input_echo.json", "--trace"],
    ["run", "--machine", "fuzzy_coin.json", "--input", "input_one.json"],
    ["eval-circuit", "--circuit", "two_gate_circuit.json", "--input", "input_zero.json"],
    ["compile", "--machine", "copier.json", "--n", "2", "--t", "4", "--inputs", "inputs.json"],
    ["sat", "--circuit", "gate_circuit.json", "--via-fpvs"],
    ["verify-fpvs", "--machine", "proof_matches_input.json", "--input", "input_one.json", "--proofs", "proofs_len1.json"],
    ["check-af", "--reduction", "af_identity.json", "--jobs", "3"],
    ["check-af", "--reduction", "af_mutated.json"],
    ["check-apf", "--reduction", "apf_identity.json"],
    ["check-apf", "--reduction", "apf_bad_g.json"],
    ["reduce-to-sat", "--machine", "proof_matches_input.json", "--input", "input_one.json", "--n", "1", "--t", "4"],
    ["validate", "fuzzy_string.json"],
    ["validate", "bad_degree.json"],
    ["demo", "np-sat", "--seed", "5"],
    ["demo", "crisp-fn", "--machine", "increment_tm.json", "--input", "0111"],
]


def _invoke(argv):
    args = [str(DATA / a) if a.endswith(".json") else a for a in argv]
    done = subprocess.run([sys.executable, "-m", "fuzzcomp.cli", *args], capture_output=True)
    return done.returncode, done.stdout, done.stderr


def test_criterion_10_determinism(verdict):
    differing = []
    for argv in CLI_COMMANDS:
        first, second = _invoke(argv), _invoke(argv)
        if first != second or not first[1]:
            differing.append(" ".join(argv[:2]))
    detail = f"{len(CLI_COMMANDS)} commands run twice, differing={differing}"
    verdict(10, "byte-identical reports on re-run", not differing, detail)
