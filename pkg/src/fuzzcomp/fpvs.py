"""Fuzzy proof verification systems and Fuzzy-Circuit-SAT.

A verifier is a DFTM with an extra read-only proof tape.  Its outcome on an
input takes the largest acceptance degree and the smallest rejection degree
over a declared finite space of proofs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping, Sequence

from .circuits import FuzzyCircuit, evaluate, validate_circuit
from .core import ONE, FuzzySet, crisp_embed, ell
from .dftm import AUX_ALPHABET, BLANK, DFTM, LEFT_END, Configuration, RunResult, _check_input, evolve
from .errors import CircuitError, EmptyInputSpace, EmptyProofSpace, MachineError, TooLarge
from .operators import TNORMS, fold_aggregate

VERDICT_BITS = ("0", "1")
# the verifier keeps whole level assignments in its states
MAX_SAT_INPUTS = 12


@dataclass(frozen=True, eq=False)
class FPVS(DFTM):
    """Four-tape verifier: ``delta`` maps ``(q, s1, s2, s3)`` to moves ``(p, tau, out, d1, d2, d3)``."""

    proof_alphabet: tuple = ("0", "1")
    proof_tape_alphabet: tuple = ()

    key_arity = 4

    def __post_init__(self):
        object.__setattr__(self, "proof_alphabet", tuple(self.proof_alphabet))
        tape = tuple(self.proof_tape_alphabet)
        for sym in self.proof_alphabet + (BLANK,):
            if sym not in tape:
                tape += (sym,)
        object.__setattr__(self, "proof_tape_alphabet", tape)
        super().__post_init__()

    @property
    def read_alphabets(self) -> tuple:
        return (self.work_alphabet, AUX_ALPHABET, self.proof_tape_alphabet)

    def to_json(self) -> dict:
        doc = super().to_json()
        doc.update(kind="fpvs", proofAlphabet=list(self.proof_alphabet), proofTapeAlphabet=list(self.proof_tape_alphabet))
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "FPVS":
        from .core import as_degree

        trans = [(t["from"], t["to"], as_degree(t["degree"])) for t in doc["transitions"]]
        return cls.from_transitions(
            trans,
            proof_alphabet=tuple(doc["proofAlphabet"]),
            proof_tape_alphabet=tuple(doc.get("proofTapeAlphabet", ())),
            **cls._common_from_json(doc),
        )


def machine_from_json(doc: Mapping) -> DFTM:
    if doc.get("kind") == "fpvs" or "proofAlphabet" in doc:
        return FPVS.from_json(doc)
    return DFTM.from_json(doc)


@dataclass(frozen=True)
class ProofSpace:
    """A finite, ordered list of fuzzy proofs.

    Spaces built by :meth:`crisp` remember their generator and serialize as it.
    """

    proofs: tuple
    generator: dict | None = field(default=None, compare=False)

    @classmethod
    def crisp(cls, alphabet: Sequence[str], length: int, exact: bool = False) -> "ProofSpace":
        """All crisp strings over ``alphabet`` of length ``length`` (or up to it)."""
        lengths = [length] if exact else range(length + 1)
        proofs = tuple(crisp_embed("".join(p)) for k in lengths for p in product(alphabet, repeat=k))
        return cls(proofs, {"kind": "proofspace", "alphabet": "".join(alphabet), "length": length, "exact": exact})

    def __getitem__(self, i):
        return self.proofs[i]

    def __iter__(self):
        return iter(self.proofs)

    def __len__(self):
        return len(self.proofs)

    def to_json(self):
        if self.generator is not None:
            return dict(self.generator)
        return [p.to_json() for p in self.proofs]


def _as_verdict(output: FuzzySet) -> FuzzySet:
    return FuzzySet._trusted({w: d for w, d in output if w in VERDICT_BITS}, "verdict")


def verify_run(N: FPVS, s: FuzzySet, proof: FuzzySet, max_steps: int, trace: bool = False) -> RunResult:
    """Run N on (s, proof); conf_0 carries the product s(x) * proof(y)."""
    conf0 = {}
    for x, a in s:
        _check_input(N, x)
        for y, b in proof:
            if set(y) - set(N.proof_alphabet):
                raise MachineError(f"proof {y!r} uses symbols outside the proof alphabet")
            conf0[Configuration("", N.initial, LEFT_END + x + "$", 0, "", y, 0)] = a * b
    return evolve(N, conf0, ell(s), max_steps, trace)


def verify(N: FPVS, s: FuzzySet, proof: FuzzySet, max_steps: int) -> FuzzySet:
    return _as_verdict(verify_run(N, s, proof, max_steps).output)


def _sup_inf(verdicts: list[FuzzySet]) -> tuple[FuzzySet, int, int]:
    accept = [v("1") for v in verdicts]
    reject = [v("0") for v in verdicts]
    i1 = max(range(len(accept)), key=lambda i: (accept[i], -i))
    i0 = min(range(len(reject)), key=lambda i: (reject[i], i))
    return FuzzySet({"1": accept[i1], "0": reject[i0]}, "verdict"), i1, i0


def outcome(N: FPVS, s: FuzzySet, space: Iterable[FuzzySet], max_steps: int, with_witnesses: bool = False):
    """b(1) = max over proofs of N(s, proof)(1); b(0) = min over proofs of N(s, proof)(0).

    With ``with_witnesses`` returns ``(verdict, index_for_1, index_for_0)``.
    """
    proofs = list(space)
    if not proofs:
        raise EmptyProofSpace("outcome over an empty proof space")
    result = _sup_inf([verify(N, s, p, max_steps) for p in proofs])
    return result if with_witnesses else result[0]


def fuzzy_circuit_sat(C: FuzzyCircuit, input_space: Iterable[FuzzySet], with_witnesses: bool = False):
    """b(1) = max over inputs of C(s)(1); b(0) = min over inputs of C(s)(0)."""
    inputs = list(input_space)
    if not inputs:
        raise EmptyInputSpace("Fuzzy-Circuit-SAT over an empty input space")
    if len(C.designated) != 1:
        raise ValueError("Fuzzy-Circuit-SAT needs a single designated output")
    result = _sup_inf([evaluate(C, s) for s in inputs])
    return result if with_witnesses else result[0]


def sat_via_fpvs(C: FuzzyCircuit) -> FPVS:
    """A verifier whose proof is an assignment to C's inputs and which evaluates C on it.

    The verifier first copies the proof bits into its finite control, then
    walks the circuit level by level: from state ``L{t}:v`` it moves to
    ``L{t+1}:w`` with the cross-gate combination of the gate degrees, and
    finally writes the designated output bit.  Its input is the empty
    string (see :data:`SAT_INPUT`).
    """
    report = validate_circuit(C)
    if not report.ok:
        raise CircuitError(report)
    if len(C.designated) != 1:
        raise ValueError("circuit must have a single designated output")
    if C.ops.tnorm != "min" or C.ops.tconorm != "max" or C.combiner != "min":
        raise ValueError("sat_via_fpvs needs the standard (min, max) tuple with a min combiner")
    tnorm = TNORMS[C.combiner]
    n = len(C.inputs)
    if n > MAX_SAT_INPUTS:
        raise TooLarge(f"{n} circuit inputs exceed the limit of {MAX_SAT_INPUTS} for the table-driven verifier")
    trans = []

    def move(q, s3, p, out="", d3=0, deg=ONE):
        trans.append(((q, LEFT_END, LEFT_END, s3), (p, LEFT_END, out, 0, 0, d3), deg))

    for k in range(n):
        for prefix in product("01", repeat=k):
            prefix = "".join(prefix)
            for b in "01":
                move(f"r:{prefix}", b, f"r:{prefix}{b}", d3=1)

    level_states = [dict() for _ in range(C.depth + 1)]
    for y in product("01", repeat=n):
        y = "".join(y)
        for combo in product(*(c.value.pairs for c in C.constants)):
            deg = fold_aggregate(tnorm, [d for _, d in combo]) if combo else ONE
            v = y + "".join(w for w, _ in combo)
            level_states[0][v] = True
            for s3 in ("0", "1", BLANK):
                move(f"r:{y}", s3, f"L0:{v}", deg=deg)

    labels = C.level_labels(0)
    for t, level in enumerate(C.levels):
        pos = {l: i for i, l in enumerate(labels)}
        for v in sorted(level_states[t]):
            images = [g("".join(v[pos[l]] for l in g.inputs)).pairs for g in level]
            for combo in product(*images):
                deg = fold_aggregate(tnorm, [d for _, d in combo])
                if deg > 0:
                    w = "".join(x for x, _ in combo)
                    level_states[t + 1][w] = True
                    for s3 in ("0", "1", BLANK):
                        move(f"L{t}:{v}", s3, f"L{t + 1}:{w}", deg=deg)
        labels = tuple(l for g in level for l in g.outputs)

    out_pos = labels.index(C.designated[0])
    for v in sorted(level_states[C.depth]):
        bit = v[out_pos]
        for s3 in ("0", "1", BLANK):
            move(f"L{C.depth}:{v}", s3, f"halt{bit}", out=bit)

    states = {"halt0", "halt1"}
    for key, mv, _ in trans:
        states.update((key[0], mv[0]))
    return FPVS.from_transitions(
        trans,
        states=tuple(sorted(states)),
        input_alphabet=("0",),
        work_alphabet=(),
        output_alphabet=VERDICT_BITS,
        initial="r:",
        finals={"halt0", "halt1"},
        ops=C.ops,
        name="circuit-sat-verifier",
        proof_alphabet=VERDICT_BITS,
    )


SAT_INPUT = crisp_embed("")


def sat_verifier_steps(C: FuzzyCircuit) -> int:
    """Running time of :func:`sat_via_fpvs` on any well-formed proof."""
    return len(C.inputs) + C.depth + 2

