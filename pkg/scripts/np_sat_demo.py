"""Decide random 3-CNF formulas with the degree-1 fuzzy lifting of a guess-and-check machine.

Each formula is also checked by exhaustive assignment search; exits 1 on disagreement.
"""

import argparse
import random
import sys
import time

from fuzzcomp.catalog import brute_force_sat, cnf_guess_and_check_ntm, encode_cnf, np_verdict
from fuzzcomp.generators import random_cnf


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--formulas", type=int, default=20)
    ap.add_argument("--max-vars", type=int, default=10)
    ap.add_argument("--ratio", type=float, default=4.3, help="clauses per variable")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    disagree = 0
    for i in range(args.formulas):
        n = rng.randint(3, args.max_vars)
        clauses = random_cnf(rng, n, max(1, round(args.ratio * n)))
        t0 = time.perf_counter()
        result = np_verdict(cnf_guess_and_check_ntm(n, len(clauses)), encode_cnf(clauses))
        sat = brute_force_sat(n, clauses)
        ok = (result.output("1") == 1) == sat
        disagree += not ok
        print(f"formula {i:3d}  vars={n:2d}  clauses={len(clauses):3d}  b(1)={result.output('1')}  sat={sat}  "
              f"steps={result.time}  {time.perf_counter() - t0:.2f}s  {'ok' if ok else 'DISAGREE'}")
    return 1 if disagree else 0


if __name__ == "__main__":
    sys.exit(main())
