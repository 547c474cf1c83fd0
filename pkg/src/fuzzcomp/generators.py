"""Seeded random instances: machines, fuzzy inputs, circuits, verifiers, CNFs."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .circuits import FuzzyCircuit, FuzzyConstant, FuzzyGate
from .core import FuzzySet
from .dftm import BLANK, DFTM, LEFT_END, RIGHT_END
from .fpvs import FPVS

DEGREE_GRID = tuple(Fraction(k, 12) for k in range(1, 13))


def random_degree(rng: random.Random, grid=DEGREE_GRID) -> Fraction:
    return rng.choice(grid)


def random_fuzzy_set(rng: random.Random, elements, max_support: int, universe: str = "") -> FuzzySet:
    elements = list(elements)
    k = rng.randint(1, min(max_support, len(elements)))
    return FuzzySet({e: random_degree(rng) for e in rng.sample(elements, k)}, universe)


def strings(alphabet, max_len: int, min_len: int = 0) -> list[str]:
    return ["".join(p) for k in range(min_len, max_len + 1) for p in product(alphabet, repeat=k)]


def random_fuzzy_input(rng: random.Random, alphabet, max_len: int, max_support: int = 4) -> FuzzySet:
    return random_fuzzy_set(rng, strings(alphabet, max_len), max_support)


def _random_moves(rng, states, finals, work, outputs, proof: bool, max_branch: int, p_final: float):
    moves = {}
    running = [q for q in states if q not in finals]
    for _ in range(rng.randint(1, max_branch)):
        if rng.random() < p_final:
            p = rng.choice(sorted(finals))
        else:
            p = rng.choice(running)
        move = (p, rng.choice(work), rng.choice(("",) + outputs), rng.choice((-1, 0, 1, 1)), rng.choice((-1, 0, 1, 1)))
        if proof:
            move += (rng.choice((-1, 0, 1, 1)),)
        moves[move] = random_degree(rng)
    return moves


def random_dftm(
    rng: random.Random,
    n_states: int | None = None,
    input_alphabet=("1",),
    outputs=("0", "1"),
    max_branch: int = 2,
    density: float = 0.9,
    p_final: float = 0.2,
) -> DFTM:
    """Random machine with at most 4 states over the work alphabet {¢, $, #} + input."""
    n_states = n_states or rng.randint(2, 4)
    states = tuple(f"q{i}" for i in range(n_states))
    finals = {states[-1]} if n_states < 3 or rng.random() < 0.5 else set(states[-2:])
    work = (LEFT_END, RIGHT_END, BLANK) + tuple(input_alphabet)
    trans = []
    for q in states:
        if q in finals:
            continue
        for s1, s2 in product(work, (LEFT_END, "1")):
            if rng.random() < density:
                for move, deg in _random_moves(rng, states, finals, work, outputs, False, max_branch, p_final).items():
                    trans.append(((q, s1, s2), move, deg))
    return DFTM.from_transitions(
        trans,
        states=states,
        input_alphabet=tuple(input_alphabet),
        work_alphabet=work,
        output_alphabet=tuple(outputs),
        initial=states[0],
        finals=finals,
        name="random",
    )


def random_fpvs(rng: random.Random, n_states: int | None = None, input_alphabet=("0", "1"), max_branch: int = 2) -> FPVS:
    """Random verifier with binary proofs that only ever outputs a single verdict bit."""
    n_states = n_states or rng.randint(2, 4)
    states = tuple(f"q{i}" for i in range(n_states)) + ("acc", "rej")
    finals = {"acc", "rej"}
    work = (LEFT_END, RIGHT_END, BLANK) + tuple(input_alphabet)
    trans = []
    for q in states[:n_states]:
        for s1, s2, s3 in product(work, (LEFT_END, "1"), ("0", "1", BLANK)):
            if rng.random() < 0.8:
                for _ in range(rng.randint(1, max_branch)):
                    if rng.random() < 0.5:
                        p = rng.choice(("acc", "rej"))
                        out = "1" if p == "acc" else "0"
                    else:
                        p, out = rng.choice(states[:n_states]), ""
                    move = (p, rng.choice(work), out, rng.choice((-1, 0, 1, 1)), 0, rng.choice((-1, 0, 1, 1)))
                    trans.append(((q, s1, s2, s3), move, random_degree(rng)))
    # keep one degree per (key, move)
    dedup = {}
    for key, move, deg in trans:
        dedup[(key, move)] = deg
    return FPVS.from_transitions(
        [(k, m, d) for (k, m), d in dedup.items()],
        states=states,
        input_alphabet=tuple(input_alphabet),
        work_alphabet=work,
        output_alphabet=("0", "1"),
        initial=states[0],
        finals=finals,
        name="random-verifier",
        proof_alphabet=("0", "1"),
    )


def random_gate(rng: random.Random, inputs, outputs, max_support: int = 2, crisp: bool = False) -> FuzzyGate:
    table = {}
    rows = strings("01", len(inputs), len(inputs))
    cols = strings("01", len(outputs), len(outputs))
    for row in rows:
        if crisp:
            table[row] = FuzzySet({rng.choice(cols): 1}, "bits")
        else:
            table[row] = random_fuzzy_set(rng, cols, max_support, "bits")
    return FuzzyGate(tuple(inputs), tuple(outputs), table=table)


def random_circuit(
    rng: random.Random,
    n_inputs: int,
    depth: int | None = None,
    max_width: int = 4,
    crisp: bool = False,
    single_output: bool = True,
    n_constants: int = 0,
) -> FuzzyCircuit:
    """Random layered circuit; each level reads only the previous level's variables.

    Constants ``k{i}`` are one-bit fuzzy sets that sit beside the inputs.
    """
    depth = depth or rng.randint(1, 3)
    inputs = tuple(f"x{i}" for i in range(n_inputs))
    constants = tuple(
        FuzzyConstant((f"k{i}",), FuzzySet({"1": 1} if crisp else random_fuzzy_set(rng, "01", 2).as_dict(), "bits"))
        for i in range(n_constants)
    )
    prev = inputs + tuple(c.labels[0] for c in constants)
    levels = []
    for t in range(1, depth + 1):
        last = t == depth
        n_gates = 1 if (last and single_output) else rng.randint(1, 3)
        level, counter = [], 0
        for _ in range(n_gates):
            k_in = rng.randint(1, min(3, len(prev)))
            k_out = 1 if (last and single_output) else rng.randint(1, 2)
            if counter + k_out > max_width:
                k_out = max(1, max_width - counter)
            outs = tuple(f"v{t}_{counter + j}" for j in range(k_out))
            counter += k_out
            level.append(random_gate(rng, rng.sample(prev, k_in), outs, crisp=crisp))
        levels.append(level)
        prev = tuple(l for g in level for l in g.outputs)
    return FuzzyCircuit(inputs, levels, constants=constants)


def random_cnf(rng: random.Random, num_vars: int, num_clauses: int, width: int = 3) -> list[list[int]]:
    clauses = []
    for _ in range(num_clauses):
        vars_ = rng.sample(range(1, num_vars + 1), min(width, num_vars))
        clauses.append([v if rng.random() < 0.5 else -v for v in vars_])
    return clauses


def random_table_problem(rng: random.Random, instances, outputs=("0", "1", "00", "01"), max_support: int = 3) -> dict:
    """A fuzzy function given by table: each instance maps to a random fuzzy set of outputs."""
    return {s: random_fuzzy_set(rng, outputs, max_support) for s in instances}
