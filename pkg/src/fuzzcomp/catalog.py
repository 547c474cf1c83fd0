"""Worked embeddings: crisp languages, NP problems through degree-1
nondeterminism, and crisp functions run as fuzzy machines."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Mapping

from .core import ONE, FuzzySet, crisp_embed
from .dftm import BLANK, DFTM, LEFT_END, RIGHT_END, run
from .errors import MachineError, NotHalted

VERDICT = "verdict"


@dataclass(frozen=True)
class CrispLanguageFuzzification:
    """x -> verdict {1: 1} if x is in the language, else {0: 1}."""

    decider: Callable[[str], bool]

    def __call__(self, x: str) -> FuzzySet:
        return fuzzify_language(self.decider, x)


def fuzzify_language(decider: Callable[[str], bool], x: str) -> FuzzySet:
    bit = "1" if decider(x) else "0"
    return FuzzySet._trusted({bit: ONE}, VERDICT)


# -- nondeterministic machines -------------------------------------------------


@dataclass(frozen=True, eq=False)
class NTM:
    """Single-tape nondeterministic machine with a write-only output tape.

    ``transitions`` maps ``(state, symbol)`` to a list of choices
    ``(next_state, written, output, move)``; ``step_bound`` is the declared
    bound on every branch.
    """

    states: tuple
    input_alphabet: tuple
    work_alphabet: tuple
    output_alphabet: tuple
    transitions: Mapping
    initial: str
    finals: frozenset
    step_bound: int
    name: str = ""


def np_to_fuzzy_dftm(ntm: NTM) -> DFTM:
    """Every nondeterministic choice becomes a degree-1 move; the aux head never moves."""
    trans = []
    for (q, sym), choices in ntm.transitions.items():
        for p, tau, out, d in choices:
            trans.append(((q, sym, LEFT_END), (p, tau, out, d, 0), ONE))
    return DFTM.from_transitions(
        trans,
        states=tuple(ntm.states),
        input_alphabet=tuple(ntm.input_alphabet),
        work_alphabet=tuple(ntm.work_alphabet),
        output_alphabet=tuple(ntm.output_alphabet),
        initial=ntm.initial,
        finals=set(ntm.finals),
        name=ntm.name,
    )


def np_verdict(ntm: NTM, x: str, machine: DFTM | None = None):
    """Run the fuzzy lifting of ``ntm`` on the crisp input x within its step bound."""
    M = machine or np_to_fuzzy_dftm(ntm)
    return run(M, crisp_embed(x), ntm.step_bound)


# -- 3-CNF guess and check -----------------------------------------------------

MAX_VARS = 10
POSITIVE = "abcdefghij"
NEGATIVE = POSITIVE.upper()
CLAUSE_END = ";"


def encode_cnf(clauses: Iterable[Iterable[int]]) -> str:
    """[[1, -2], [3]] -> "aB;c;"."""
    out = []
    for clause in clauses:
        for lit in clause:
            v = abs(lit)
            if not 1 <= v <= MAX_VARS:
                raise ValueError(f"variable {v} outside 1..{MAX_VARS}")
            out.append(POSITIVE[v - 1] if lit > 0 else NEGATIVE[v - 1])
        out.append(CLAUSE_END)
    return "".join(out)


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    num_vars, clauses, current = 0, [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise ValueError(f"bad problem line: {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                current.append(lit)
                num_vars = max(num_vars, abs(lit))
    if current:
        clauses.append(current)
    return num_vars, clauses


def brute_force_sat(num_vars: int, clauses) -> bool:
    for bits in product((False, True), repeat=num_vars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def cnf_guess_and_check_ntm(num_vars: int, max_clauses: int = 64) -> NTM:
    """Guess an assignment in one step, then scan the clauses.

    States ``s{a}{f}`` carry the assignment ``a`` and whether the current
    clause is satisfied yet.  An unsatisfied clause ends the branch in
    ``rej`` writing 0; reaching ``$`` ends it in ``acc`` writing 1.
    """
    if not 0 <= num_vars <= MAX_VARS:
        raise ValueError(f"num_vars must be in 0..{MAX_VARS}")
    letters = POSITIVE[:num_vars] + NEGATIVE[:num_vars]
    work = (LEFT_END, RIGHT_END, BLANK) + tuple(letters) + (CLAUSE_END,)
    trans: dict = {}
    assignments = ["".join(a) for a in product("01", repeat=num_vars)]
    trans[("start", LEFT_END)] = [(f"s{a}0", LEFT_END, "", 1) for a in assignments]
    for a in assignments:
        for flag in "01":
            q = f"s{a}{flag}"
            for ch in letters:
                v = POSITIVE.index(ch.lower())
                hit = (a[v] == "1") == ch.islower()
                trans[(q, ch)] = [(f"s{a}{int(flag == '1' or hit)}", ch, "", 1)]
            if flag == "1":
                trans[(q, CLAUSE_END)] = [(f"s{a}0", CLAUSE_END, "", 1)]
            else:
                trans[(q, CLAUSE_END)] = [("rej", CLAUSE_END, "0", 0)]
            trans[(q, RIGHT_END)] = [("acc", RIGHT_END, "1", 0)]
    states = ("start", "acc", "rej") + tuple(f"s{a}{f}" for a in assignments for f in "01")
    return NTM(
        states=states,
        input_alphabet=tuple(letters) + (CLAUSE_END,),
        work_alphabet=work,
        output_alphabet=("0", "1"),
        transitions=trans,
        initial="start",
        finals=frozenset({"acc", "rej"}),
        step_bound=4 * max_clauses + 2,
        name=f"3cnf-guess-check-{num_vars}",
    )


# -- crisp functions -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CrispTM:
    """Deterministic single-tape machine with a write-only output tape.

    ``transitions`` maps ``(state, symbol)`` to ``(next_state, written,
    output, move)``.  The tape starts as ``¢ x $`` with the head on ``¢``.
    """

    states: tuple
    input_alphabet: tuple
    work_alphabet: tuple
    output_alphabet: tuple
    transitions: Mapping
    initial: str
    halt: str
    name: str = ""
    extra: dict = field(default_factory=dict)


def run_crisp_tm(tm: CrispTM, x: str, max_steps: int = 10_000) -> str:
    """Plain list-tape simulation; returns the output tape."""
    tape = [LEFT_END] + list(x) + [RIGHT_END]
    q, head, out = tm.initial, 0, []
    for _ in range(max_steps + 1):
        if q == tm.halt:
            return "".join(out)
        key = (q, tape[head])
        if key not in tm.transitions:
            raise MachineError(f"{tm.name or 'machine'} is stuck in {q!r} reading {tape[head]!r}")
        q, tape[head], sym, d = tm.transitions[key]
        out.append(sym)
        head += d
        if head < 0:
            raise MachineError("head fell off the left end")
        if head == len(tape):
            tape.append(BLANK)
    raise NotHalted(max_steps)


def crisp_fn_to_fuzzy(tm: CrispTM) -> DFTM:
    trans = [((q, sym, LEFT_END), (p, tau, out, d, 0), ONE) for (q, sym), (p, tau, out, d) in tm.transitions.items()]
    return DFTM.from_transitions(
        trans,
        states=tuple(tm.states),
        input_alphabet=tuple(tm.input_alphabet),
        work_alphabet=tuple(tm.work_alphabet),
        output_alphabet=tuple(tm.output_alphabet),
        initial=tm.initial,
        finals={tm.halt},
        name=tm.name,
    )


def _bits_tm(name: str, trans: dict, states: tuple) -> CrispTM:
    return CrispTM(
        states=states,
        input_alphabet=("0", "1"),
        work_alphabet=(LEFT_END, RIGHT_END, BLANK, "0", "1"),
        output_alphabet=("0", "1"),
        transitions=trans,
        initial=states[0],
        halt="halt",
        name=name,
    )


def binary_increment_tm() -> CrispTM:
    """x -> binary x + 1, keeping leading zeros; an overflow adds a leading 1."""
    t = {}
    for b in "01":
        t[("right", b)] = ("right", b, "", 1)
        t[("back", b)] = ("back", b, "", -1)
        t[("copy", b)] = ("copy", b, b, 1)
    t[("right", LEFT_END)] = ("right", LEFT_END, "", 1)
    t[("right", RIGHT_END)] = ("carry", RIGHT_END, "", -1)
    t[("carry", "1")] = ("carry", "0", "", -1)
    t[("carry", "0")] = ("back", "1", "", -1)
    t[("carry", LEFT_END)] = ("copy", LEFT_END, "1", 1)
    t[("back", LEFT_END)] = ("copy", LEFT_END, "", 1)
    t[("copy", RIGHT_END)] = ("halt", RIGHT_END, "", 0)
    return _bits_tm("binary-increment", t, ("right", "carry", "back", "copy", "halt"))


def identity_tm() -> CrispTM:
    t = {("copy", b): ("copy", b, b, 1) for b in "01"}
    t[("start", LEFT_END)] = ("copy", LEFT_END, "", 1)
    t[("copy", RIGHT_END)] = ("halt", RIGHT_END, "", 0)
    return _bits_tm("identity", t, ("start", "copy", "halt"))


def increment_oracle(x: str) -> str:
    """Python-arithmetic reference for :func:`binary_increment_tm`."""
    return format(int(x or "0", 2) + 1, f"0{len(x)}b")
