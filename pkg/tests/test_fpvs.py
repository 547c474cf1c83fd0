import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzcomp import samples
from fuzzcomp.circuits import FuzzyCircuit, FuzzyConstant, FuzzyGate, all_crisp_inputs, crisp_bits, evaluate
from fuzzcomp.core import FuzzySet, crisp_embed
from fuzzcomp.dftm import DFTM, run
from fuzzcomp.errors import EmptyInputSpace, EmptyProofSpace, NotHalted, TooLarge
from fuzzcomp.fpvs import (
    FPVS,
    SAT_INPUT,
    ProofSpace,
    fuzzy_circuit_sat,
    machine_from_json,
    outcome,
    sat_verifier_steps,
    sat_via_fpvs,
    verify,
)
from fuzzcomp.generators import random_circuit, random_fpvs, random_fuzzy_input
from oracles import Diverged, verifier_branch_outcome

F = Fraction
W = ("¢", "$", "#", "0", "1")


def proof_copier():
    """Copies the first proof bit to the output and halts."""
    trans = []
    for b in "01":
        trans.append((("q0", "¢", "¢", b), ("h", "¢", b, 0, 0, 0), 1))
    return FPVS.from_transitions(
        trans, states=("q0", "h"), input_alphabet=("0", "1"), work_alphabet=W, output_alphabet=("0", "1"),
        initial="q0", finals={"h"}, proof_alphabet=("0", "1"),
    )


def identity_circuit():
    return FuzzyCircuit(("x",), [[FuzzyGate.named("identity", ("x",), ("y",))]])


def const_one_circuit():
    return FuzzyCircuit(("x",), [[FuzzyGate.named("const1", ("x",), ("y",))]])


def test_proof_ignoring_acceptor():
    N = samples.constant_acceptor(F(1))
    assert verify(N, crisp_embed("0"), crisp_embed("1"), 5) == FuzzySet({"1": 1})


def test_empty_proof_gives_empty_verdict():
    assert len(verify(samples.proof_matches_input(), crisp_embed("0"), FuzzySet(), 5)) == 0


def test_start_degree_is_a_product():
    # conf_0 carries 1 * 1/2; the copier then writes the proof bit at degree 1
    got = verify(proof_copier(), crisp_embed("0"), FuzzySet({"1": F(1, 2)}), 5)
    assert got == FuzzySet({"1": F(1, 2)})
    # the product differs from min when both sides are fractional: 2/3 * 3/4 = 1/2
    got = verify(proof_copier(), FuzzySet({"0": F(2, 3)}), FuzzySet({"1": F(3, 4)}), 5)
    assert got == FuzzySet({"1": F(1, 2)})


def test_outcome_singleton_space_equals_verify():
    N = samples.proof_matches_input()
    s = FuzzySet({"0": 1, "1": F(1, 3)})
    assert outcome(N, s, [crisp_embed("1")], 5) == verify(N, s, crisp_embed("1"), 5)


def test_outcome_takes_max_and_min():
    coin = FPVS.from_transitions(
        [
            (("q0", "¢", "¢", "0"), ("a", "¢", "1", 0, 0, 0), F(1, 2)),
            (("q0", "¢", "¢", "0"), ("r", "¢", "0", 0, 0, 0), F(1, 3)),
            (("q0", "¢", "¢", "1"), ("a", "¢", "1", 0, 0, 0), F(3, 4)),
            (("q0", "¢", "¢", "1"), ("r", "¢", "0", 0, 0, 0), F(1, 4)),
        ],
        states=("q0", "a", "r"), input_alphabet=("0", "1"), work_alphabet=W, output_alphabet=("0", "1"),
        initial="q0", finals={"a", "r"}, proof_alphabet=("0", "1"),
    )
    assert outcome(coin, crisp_embed(""), ProofSpace.crisp("01", 1, exact=True), 3) == FuzzySet({"1": F(3, 4), "0": F(1, 4)})


def test_outcome_needs_proofs():
    with pytest.raises(EmptyProofSpace):
        outcome(samples.proof_matches_input(), crisp_embed("0"), [], 5)


def test_proof_space_generator():
    assert [p.support()[0] for p in ProofSpace.crisp("01", 2)] == ["", "0", "1", "00", "01", "10", "11"]
    assert len(ProofSpace.crisp("01", 2, exact=True)) == 4


def test_fpvs_json_round_trip():
    N = samples.proof_matches_input()
    again = machine_from_json(N.to_json())
    assert isinstance(again, FPVS)
    assert again.to_json() == N.to_json()


def test_circuit_sat_examples():
    assert fuzzy_circuit_sat(const_one_circuit(), all_crisp_inputs(const_one_circuit()))("1") == 1
    verdict = fuzzy_circuit_sat(identity_circuit(), [crisp_bits("0"), crisp_bits("1")])
    assert (verdict("1"), verdict("0")) == (1, 0)
    with pytest.raises(EmptyInputSpace):
        fuzzy_circuit_sat(identity_circuit(), [])


def test_sat_via_fpvs_examples():
    for C in (const_one_circuit(), identity_circuit()):
        N = sat_via_fpvs(C)
        got = outcome(N, SAT_INPUT, ProofSpace.crisp("01", len(C.inputs), exact=True), sat_verifier_steps(C))
        assert got == fuzzy_circuit_sat(C, all_crisp_inputs(C))
    assert outcome(sat_via_fpvs(const_one_circuit()), SAT_INPUT, [crisp_embed("0")], 10)("1") == 1


def test_sat_via_fpvs_size_guard():
    n = 13
    C = FuzzyCircuit(tuple(f"x{i}" for i in range(n)), [[FuzzyGate.named("and", tuple(f"x{i}" for i in range(n)), ("y",))]])
    with pytest.raises(TooLarge):
        sat_via_fpvs(C)


def test_sat_via_fpvs_with_constants():
    k = FuzzyConstant(("k",), FuzzySet({"1": F(2, 3), "0": F(1, 5)}, "bits"))
    C = FuzzyCircuit(("x",), [[FuzzyGate.named("xor", ("x", "k"), ("y",))]], constants=(k,))
    got = outcome(sat_via_fpvs(C), SAT_INPUT, ProofSpace.crisp("01", 1, exact=True), sat_verifier_steps(C))
    assert got == fuzzy_circuit_sat(C, all_crisp_inputs(C))


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_sat_via_fpvs_random(seed):
    rng = random.Random(seed)
    C = random_circuit(rng, rng.randint(1, 6))
    N = sat_via_fpvs(C)
    space = ProofSpace.crisp("01", len(C.inputs), exact=True)
    assert outcome(N, SAT_INPUT, space, sat_verifier_steps(C)) == fuzzy_circuit_sat(C, all_crisp_inputs(C))


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_outcome_matches_branch_oracle(seed):
    rng = random.Random(seed)
    N = random_fpvs(rng)
    s = random_fuzzy_input(rng, "01", 2, 3)
    proofs = ["0", "1", "01", "11"]
    try:
        want = verifier_branch_outcome(N, s, proofs, 6)
    except Diverged:
        return
    got = outcome(N, s, [crisp_embed(y) for y in proofs], 6)
    assert (got("1"), got("0")) == (want["1"], want["0"])


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_outcome_monotone_and_witnessed(seed):
    rng = random.Random(seed)
    N = random_fpvs(rng)
    s = random_fuzzy_input(rng, "01", 2, 3)
    small = list(ProofSpace.crisp("01", 1, exact=True))
    big = list(ProofSpace.crisp("01", 2))
    try:
        a = outcome(N, s, small, 6)
        b, i1, i0 = outcome(N, s, big, 6, with_witnesses=True)
    except NotHalted:
        return
    assert b("1") >= a("1") and b("0") <= a("0")
    assert verify(N, s, big[i1], 6)("1") == b("1")
    assert verify(N, s, big[i0], 6)("0") == b("0")


def _bake(N: FPVS, y: str) -> DFTM:
    """The DFTM whose states remember the proof head position over the fixed proof y."""
    trans, states = [], set()
    span = range(len(y) + 8)
    for (q, s1, s2, s3), image in N.delta.items():
        for i in span:
            if (y[i] if i < len(y) else "#") != s3:
                continue
            for move, d in image:
                j = i + move[5]
                if j < 0:
                    continue
                trans.append(((f"{q}@{i}", s1, s2), (f"{move[0]}@{j}", move[1], move[2], move[3], move[4]), d))
                states.update((f"{q}@{i}", f"{move[0]}@{j}"))
    finals = {st_ for st_ in states if st_.split("@")[0] in N.finals} | {f"{f}@0" for f in N.finals}
    states |= finals | {f"{N.initial}@0"}
    return DFTM.from_transitions(
        trans, states=tuple(sorted(states)), input_alphabet=N.input_alphabet, work_alphabet=N.work_alphabet,
        output_alphabet=N.output_alphabet, initial=f"{N.initial}@0", finals=finals,
    )


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.sampled_from(["", "0", "1", "10", "011"]))
def test_crisp_proof_equals_baked_machine(seed, y):
    rng = random.Random(seed)
    N = random_fpvs(rng)
    s = random_fuzzy_input(rng, "01", 2, 3)
    try:
        got = verify(N, s, crisp_embed(y), 6)
    except NotHalted:
        return
    baked = run(_bake(N, y), s, 6).output
    assert got == FuzzySet({w: d for w, d in baked if w in ("0", "1")}, "verdict")


@given(st.integers(0, 10**6))
def test_singleton_input_space(seed):
    rng = random.Random(seed)
    C = random_circuit(rng, 3)
    s = all_crisp_inputs(C)[rng.randrange(8)]
    v = fuzzy_circuit_sat(C, [s])
    e = evaluate(C, s)
    assert (v("1"), v("0")) == (e("1"), e("0"))
