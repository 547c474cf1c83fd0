"""Compile random fuzzy machines into circuits and compare against direct simulation.

Prints one line per machine and a summary; exits 1 on any mismatch.
"""

import argparse
import random
import sys
import time

from fuzzcomp.circuits import circuit_size
from fuzzcomp.compiler import circuit_output, compile_dftm_to_circuit
from fuzzcomp.dftm import run
from fuzzcomp.errors import NotHalted
from fuzzcomp.generators import random_dftm, random_fuzzy_input


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--machines", type=int, default=25)
    ap.add_argument("--inputs", type=int, default=5)
    ap.add_argument("--n", type=int, default=4, help="input length bound")
    ap.add_argument("--t", type=int, default=8, help="step bound")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    start = time.perf_counter()
    bad = checked = 0
    for i in range(args.machines):
        alphabet = tuple("0123"[: rng.randint(1, 4)])
        M = random_dftm(rng, input_alphabet=alphabet)
        C = compile_dftm_to_circuit(M, args.n, args.t)
        agree = halted = 0
        for _ in range(args.inputs):
            s = random_fuzzy_input(rng, alphabet, args.n)
            try:
                result = run(M, s, args.t)
            except NotHalted:
                continue
            halted += 1
            agree += circuit_output(C, s) == result.output
        checked += halted
        bad += halted - agree
        print(f"machine {i:3d}  |Q|={len(M.states)}  |input|={len(alphabet)}  size={circuit_size(C):5d}  halted={halted}  agree={agree}")
    print(f"{checked} halting cases, {bad} mismatches, {time.perf_counter() - start:.2f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
