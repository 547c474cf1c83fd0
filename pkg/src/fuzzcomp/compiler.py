"""Compile DFTMs (and proof verifiers with a baked-in input) into layered circuits.

Configurations are packed into fixed-width bit records: state index, work
head, a work-tape window of ``n + t_bound + 2`` cells, aux head, input
length, output length and ``t_bound`` output cells, and for verifiers the
proof head and proof cells.  Each level holds one intensional gate that
performs one machine step on the record; halting configurations map to
themselves with degree 1 so that the last level sees every halting
configuration reached at any time.

The step rule works on the window directly and does not reuse
:func:`fuzzcomp.dftm.successors`, so comparing a compiled circuit with
:func:`fuzzcomp.dftm.run` checks two independent implementations.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .circuits import FuzzyCircuit, FuzzyConstant, FuzzyGate, evaluate
from .core import ONE, FuzzySet, crisp_embed, ell
from .dftm import BLANK, DFTM, LAMBDA, LEFT_END, RIGHT_END, run
from .errors import NotHalted, TooLarge
from .report import Report

DEFAULT_MAX_WIDTH = 4096


def max_width() -> int:
    return int(os.environ.get("FUZZCOMP_MAX_WIDTH", DEFAULT_MAX_WIDTH))


def _bits_for(count: int) -> int:
    return max(1, (count - 1).bit_length())


@dataclass(frozen=True, eq=False)
class Layout:
    machine: DFTM
    n: int
    t_bound: int
    proof_len: int = 0

    def __post_init__(self):
        if self.n < 0 or self.t_bound < 0:
            raise ValueError("need n >= 0 and t_bound >= 0")
        if self.width > max_width():
            raise TooLarge(f"configuration encoding needs {self.width} bits > limit {max_width()}")

    @property
    def has_proof(self) -> bool:
        return self.machine.key_arity == 4

    @property
    def window(self) -> int:
        return self.n + self.t_bound + 2

    @property
    def proof_window(self) -> int:
        return self.proof_len + self.t_bound + 1

    @cached_property
    def fields(self) -> list[tuple[str, int, int]]:
        """(name, repeat, bits-per-item) in encoding order."""
        M = self.machine
        layout = [
            ("state", 1, _bits_for(len(M.states))),
            ("head", 1, _bits_for(self.window)),
            ("tape", self.window, _bits_for(len(M.work_alphabet))),
            ("aux", 1, _bits_for(self.n + 1)),
            ("ell", 1, _bits_for(self.n + 1)),
            ("outlen", 1, _bits_for(self.t_bound + 1)),
            ("out", self.t_bound, _bits_for(len(M.output_alphabet))),
        ]
        if self.has_proof:
            layout += [
                ("phead", 1, _bits_for(self.proof_window)),
                ("proof", self.proof_len, _bits_for(len(M.proof_tape_alphabet))),
            ]
        return layout

    @cached_property
    def width(self) -> int:
        return sum(r * b for _, r, b in self.fields)

    @cached_property
    def work_width(self) -> int:
        """Bits of the record that precede the proof fields."""
        return sum(r * b for name, r, b in self.fields if name not in ("phead", "proof"))

    @property
    def proof_symbol_bits(self) -> int:
        return _bits_for(len(self.machine.proof_alphabet))

    # -- records --------------------------------------------------------------
    # record = (state, head, cells, aux, ell, out, phead, proof)

    def encode(self, rec) -> str:
        M = self.machine
        q, head, cells, r, l, out, ph, proof = rec
        values = {
            "state": [M.states.index(q)],
            "head": [head],
            "tape": [M.work_alphabet.index(c) for c in cells],
            "aux": [r],
            "ell": [l],
            "outlen": [len(out)],
            "out": [M.output_alphabet.index(c) for c in out.ljust(self.t_bound, BLANK)],
            "phead": [ph],
            "proof": [M.proof_tape_alphabet.index(c) for c in proof] if self.has_proof else [],
        }
        return "".join(format(v, f"0{b}b") for name, _, b in self.fields for v in values[name])

    def decode(self, bits: str):
        M = self.machine
        pos, values = 0, {}
        for name, rep, b in self.fields:
            values[name] = [int(bits[pos + i * b : pos + (i + 1) * b], 2) for i in range(rep)]
            pos += rep * b
        try:
            q = M.states[values["state"][0]]
            cells = tuple(M.work_alphabet[i] for i in values["tape"])
            out = "".join(M.output_alphabet[i] for i in values["out"])[: values["outlen"][0]]
            proof = "".join(M.proof_tape_alphabet[i] for i in values.get("proof", []))
        except IndexError:
            return None
        head = values["head"][0]
        if head >= self.window:
            return None
        ph = values["phead"][0] if self.has_proof else 0
        return (q, head, cells, values["aux"][0], values["ell"][0], out, ph, proof)

    def initial_record(self, x: str, length: int, proof: str = ""):
        if length > self.n:
            raise ValueError(f"input length {length} exceeds compiled bound n={self.n}")
        cells = (LEFT_END,) + tuple(x) + (RIGHT_END,)
        cells += (BLANK,) * (self.window - len(cells))
        return (self.machine.initial, 0, cells, 0, length, LAMBDA, 0, proof)

    def step_image(self, rec) -> dict:
        """Fuzzy image of one machine step on a record; halting records are fixed points."""
        M = self.machine
        q, head, cells, r, l, out, ph, proof = rec
        if q in M.finals:
            return {rec: ONE}
        key = (q, cells[head], LEFT_END if r == 0 else "1")
        if self.has_proof:
            key += (proof[ph] if ph < len(proof) else BLANK,)
        image = M.delta.get(key)
        if image is None:
            return {}
        result = {}
        for move, deg in image:
            p, tau, eta, d1, d2 = move[:5]
            nh, nr = head + d1, r + d2
            nph = ph + (move[5] if self.has_proof else 0)
            if nh < 0 or nr < 0 or nr > l or nph < 0:
                continue
            nout = out + eta
            if nh >= self.window or len(nout) > self.t_bound or (self.has_proof and nph >= self.proof_window):
                raise TooLarge("machine left the compiled window")
            ncells = cells[:head] + (tau,) + cells[head + 1 :]
            result[(p, nh, ncells, nr, l, nout, nph, proof)] = deg
        return result

    def encode_proof_fields(self, ph: int, proof: str) -> str:
        b = _bits_for(len(self.machine.proof_tape_alphabet))
        return format(ph, f"0{_bits_for(self.proof_window)}b") + "".join(
            format(self.machine.proof_tape_alphabet.index(c), f"0{b}b") for c in proof
        )

    def encode_output(self, w: str) -> str:
        M = self.machine
        b = _bits_for(len(M.output_alphabet))
        return format(len(w), f"0{_bits_for(self.t_bound + 1)}b") + "".join(
            format(M.output_alphabet.index(c), f"0{b}b") for c in w.ljust(self.t_bound, BLANK)
        )

    def decode_output(self, bits: str) -> str:
        M = self.machine
        lb, b = _bits_for(self.t_bound + 1), _bits_for(len(M.output_alphabet))
        length = int(bits[:lb], 2)
        cells = [M.output_alphabet[int(bits[lb + i * b : lb + (i + 1) * b], 2)] for i in range(self.t_bound)]
        return "".join(cells[:length])

    def encode_proof(self, y: str) -> str:
        if len(y) != self.proof_len:
            raise ValueError(f"proof {y!r} must have length {self.proof_len}")
        b = self.proof_symbol_bits
        return "".join(format(self.machine.proof_alphabet.index(c), f"0{b}b") for c in y)

    def decode_proof(self, bits: str) -> str:
        # codes past the end of the proof alphabet are read as its last symbol
        alpha, b = self.machine.proof_alphabet, self.proof_symbol_bits
        return "".join(alpha[min(int(bits[i : i + b], 2), len(alpha) - 1)] for i in range(0, len(bits), b))


def _rule(fn):
    cache: dict = {}

    def apply(bits: str) -> FuzzySet:
        hit = cache.get(bits)
        if hit is None:
            hit = cache[bits] = fn(bits)
        return hit

    return apply


def _step_gate(layout: Layout, inputs, outputs) -> FuzzyGate:
    def fn(bits):
        rec = layout.decode(bits)
        if rec is None:
            return FuzzySet._trusted({}, "bits")
        image = layout.step_image(rec)
        return FuzzySet._trusted({layout.encode(r): d for r, d in image.items()}, "bits")

    return FuzzyGate(inputs, outputs, rule=_rule(fn), rule_name="machine-step")


def _labels(prefix: str, count: int) -> tuple:
    return tuple(f"{prefix}{i}" for i in range(count))


def _check_ops(M: DFTM) -> None:
    if not M.ops.is_standard:
        raise ValueError("compilation needs a standard safe tuple (mu2 = mu3 = xi)")


def compile_dftm_to_circuit(M: DFTM, n: int, t_bound: int) -> FuzzyCircuit:
    """Circuit with t_bound step levels and one output level.

    Inputs are encoded with :func:`encode_input`; :func:`decode_output`
    recovers the output fuzzy string set.
    """
    if n < 0 or t_bound < 0:
        raise ValueError("need n >= 0 and t_bound >= 0")
    _check_ops(M)
    layout = Layout(M, n, t_bound)
    width = layout.width
    levels = []
    prev = _labels("x", width)
    inputs = prev
    for t in range(1, t_bound + 1):
        cur = _labels(f"c{t}_", width)
        levels.append([_step_gate(layout, prev, cur)])
        prev = cur
    out_width = len(layout.encode_output(""))

    def project(bits):
        rec = layout.decode(bits)
        if rec is None or rec[0] not in M.finals:
            return FuzzySet._trusted({}, "bits")
        return FuzzySet._trusted({layout.encode_output(rec[5]): ONE}, "bits")

    levels.append([FuzzyGate(prev, _labels("o", out_width), rule=_rule(project), rule_name="machine-output")])
    meta = {"layout": layout, "compiled_from": {"machine": M.to_json(), "n": n, "t": t_bound}}
    return FuzzyCircuit(inputs, levels, ops=M.ops, meta=meta)


def encode_input(C: FuzzyCircuit, s: FuzzySet) -> FuzzySet:
    layout: Layout = C.meta["layout"]
    length = ell(s)
    return FuzzySet._trusted({layout.encode(layout.initial_record(x, length)): d for x, d in s}, "bits")


def decode_output(C: FuzzyCircuit, result: FuzzySet) -> FuzzySet:
    layout: Layout = C.meta["layout"]
    return FuzzySet._trusted({layout.decode_output(w): d for w, d in result}, "output")


def circuit_output(C: FuzzyCircuit, s: FuzzySet) -> FuzzySet:
    return decode_output(C, evaluate(C, encode_input(C, s)))


def circuit_from_compiled(doc) -> FuzzyCircuit:
    from .fpvs import machine_from_json

    M = machine_from_json(doc["machine"])
    if "input" in doc:
        return compile_fpvs_to_circuit(M, FuzzySet.from_json(doc["input"]), doc["proof_len"], doc["t"])
    return compile_dftm_to_circuit(M, doc["n"], doc["t"])


def equivalence_check(M: DFTM, C: FuzzyCircuit, inputs, t_bound: int) -> Report:
    """Exact comparison of the decoded circuit output with ``run(M, s, t_bound)``."""
    report = Report("equivalence_check")
    for i, s in enumerate(inputs):
        got = circuit_output(C, s)
        try:
            want = run(M, s, t_bound).output
        except NotHalted:
            report.items.append({"index": i, "ok": False, "run": f"not halted within {t_bound} steps", "circuit": got})
            continue
        report.items.append({"index": i, "ok": got == want, "run": want, "circuit": got})
    return report


# -- verifiers with a fixed input --------------------------------------------


def compile_fpvs_to_circuit(N, s: FuzzySet, proof_len: int, t_bound: int) -> FuzzyCircuit:
    """Circuit over the proof bits of N with the input s baked in as a fuzzy constant.

    The single designated output is 1 (resp. 0) for halting configurations
    whose output tape holds exactly "1" (resp. "0").
    """
    _check_ops(N)
    length = ell(s)
    layout = Layout(N, length, t_bound, proof_len)
    const_labels = _labels("k", layout.work_width)
    proof_labels = _labels("p", proof_len * layout.proof_symbol_bits)
    const = {}
    for x, d in s:
        # proof fields are supplied by the init gate; keep only the work part here
        const[layout.encode(layout.initial_record(x, length, BLANK * proof_len))[: layout.work_width]] = d

    def init(bits):
        y = layout.decode_proof(bits[: len(proof_labels)])
        return FuzzySet._trusted({bits[len(proof_labels) :] + layout.encode_proof_fields(0, y): ONE}, "bits")

    width = layout.width
    levels = [[FuzzyGate(proof_labels + const_labels, _labels("c0_", width), rule=_rule(init), rule_name="verifier-init")]]
    prev = _labels("c0_", width)
    for t in range(1, t_bound + 1):
        cur = _labels(f"c{t}_", width)
        levels.append([_step_gate(layout, prev, cur)])
        prev = cur

    def verdict(bits):
        rec = layout.decode(bits)
        if rec is None or rec[0] not in N.finals or rec[5] not in ("0", "1"):
            return FuzzySet._trusted({}, "bits")
        return FuzzySet._trusted({rec[5]: ONE}, "bits")

    levels.append([FuzzyGate(prev, ("out",), rule=_rule(verdict), rule_name="verifier-verdict")])
    meta = {
        "layout": layout,
        "compiled_from": {"machine": N.to_json(), "input": s.to_json(), "proof_len": proof_len, "t": t_bound},
    }
    return FuzzyCircuit(
        proof_labels,
        levels,
        constants=(FuzzyConstant(const_labels, FuzzySet._trusted(const, "bits")),),
        ops=N.ops,
        meta=meta,
    )


def proof_assignments(C: FuzzyCircuit, proofs) -> list[FuzzySet]:
    """Circuit inputs matching crisp proof strings."""
    layout: Layout = C.meta["layout"]
    return [crisp_embed(layout.encode_proof(y), "bits") for y in proofs]


def all_proofs(alphabet, length: int) -> list[str]:
    return ["".join(p) for p in product(alphabet, repeat=length)]

