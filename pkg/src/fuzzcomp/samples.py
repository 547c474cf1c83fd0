"""Small hand-built machines and circuits used by tests, scripts and sample artifacts."""

from __future__ import annotations

from fractions import Fraction

from .circuits import FuzzyCircuit, FuzzyGate
from .core import ONE, FuzzySet
from .dftm import BLANK, DFTM, LEFT_END, RIGHT_END
from .fpvs import FPVS

BITS = ("0", "1")
WORK = (LEFT_END, RIGHT_END, BLANK) + BITS


def copier() -> DFTM:
    """Three states: skip the left end, echo each input bit to the output, halt on $."""
    trans = [(("start", LEFT_END, LEFT_END), ("copy", LEFT_END, "", 1, 0), ONE)]
    for b in BITS:
        trans.append((("copy", b, LEFT_END), ("copy", b, b, 1, 0), ONE))
    trans.append((("copy", RIGHT_END, LEFT_END), ("done", RIGHT_END, "", 0, 0), ONE))
    return DFTM.from_transitions(
        trans,
        states=("start", "copy", "done"),
        input_alphabet=BITS,
        work_alphabet=WORK,
        output_alphabet=BITS,
        initial="start",
        finals={"done"},
        name="copier",
    )


def one_step_writer() -> DFTM:
    """Writes 1 and halts in a single step."""
    return DFTM.from_transitions(
        [(("q0", LEFT_END, LEFT_END), ("q1", LEFT_END, "1", 0, 0), ONE)],
        states=("q0", "q1"),
        input_alphabet=BITS,
        work_alphabet=WORK,
        output_alphabet=BITS,
        initial="q0",
        finals={"q1"},
        name="one-step-writer",
    )


def looper() -> DFTM:
    """Never halts."""
    return DFTM.from_transitions(
        [((("q0", s, LEFT_END)), ("q0", s, "", 0, 0), ONE) for s in WORK],
        states=("q0", "q1"),
        input_alphabet=BITS,
        work_alphabet=WORK,
        output_alphabet=BITS,
        initial="q0",
        finals={"q1"},
        name="looper",
    )


def fuzzy_coin() -> DFTM:
    """Writes 1 with degree 3/4 or 0 with degree 1/3, then halts."""
    return DFTM.from_transitions(
        [
            (("q0", LEFT_END, LEFT_END), ("acc", LEFT_END, "1", 0, 0), Fraction(3, 4)),
            (("q0", LEFT_END, LEFT_END), ("rej", LEFT_END, "0", 0, 0), Fraction(1, 3)),
        ],
        states=("q0", "acc", "rej"),
        input_alphabet=BITS,
        work_alphabet=WORK,
        output_alphabet=BITS,
        initial="q0",
        finals={"acc", "rej"},
        name="fuzzy-coin",
    )


def _verifier(trans, states, name) -> FPVS:
    return FPVS.from_transitions(
        trans,
        states=states,
        input_alphabet=BITS,
        work_alphabet=WORK,
        output_alphabet=BITS,
        initial="q0",
        finals={"acc", "rej"},
        name=name,
        proof_alphabet=BITS,
    )


def proof_matches_input() -> FPVS:
    """Accepts iff the first proof bit equals the first input bit; rejects otherwise."""
    trans = []
    for s3 in BITS + (BLANK,):
        trans.append((("q0", LEFT_END, LEFT_END, s3), ("read", LEFT_END, "", 1, 0, 0), ONE))
        trans.append((("read", RIGHT_END, LEFT_END, s3), ("rej", RIGHT_END, "0", 0, 0, 0), ONE))
        for b in BITS:
            if s3 == b:
                trans.append((("read", b, LEFT_END, s3), ("acc", b, "1", 0, 0, 0), ONE))
            else:
                trans.append((("read", b, LEFT_END, s3), ("rej", b, "0", 0, 0, 0), ONE))
    return _verifier(trans, ("q0", "read", "acc", "rej"), "proof-matches-input")


def constant_acceptor(degree=Fraction(2, 3)) -> FPVS:
    """Ignores the proof and accepts with a fixed degree."""
    trans = [(("q0", LEFT_END, LEFT_END, s3), ("acc", LEFT_END, "1", 0, 0, 0), degree) for s3 in BITS + (BLANK,)]
    return _verifier(trans, ("q0", "acc", "rej"), "constant-acceptor")


def gate_example() -> FuzzyCircuit:
    """One gate: 0 -> {1: 7/10, 0: 3/10}, 1 -> {1: 1}."""
    table = {
        "0": FuzzySet({"1": Fraction(7, 10), "0": Fraction(3, 10)}, "bits"),
        "1": FuzzySet({"1": ONE}, "bits"),
    }
    return FuzzyCircuit(("x",), [[FuzzyGate(("x",), ("y",), table=table)]])


def two_gate_example() -> FuzzyCircuit:
    """Two gates reading the same input: A: 0 -> {0: 1}; B: 0 -> {0: 4/5}."""
    a = FuzzyGate(("x",), ("a",), table={"0": FuzzySet({"0": ONE}, "bits"), "1": FuzzySet({"1": ONE}, "bits")})
    b = FuzzyGate(("x",), ("b",), table={"0": FuzzySet({"0": Fraction(4, 5)}, "bits"), "1": FuzzySet({"1": ONE}, "bits")})
    return FuzzyCircuit(("x",), [[a, b]])
