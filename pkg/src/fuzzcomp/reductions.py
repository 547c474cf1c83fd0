"""Approximate fuzzy reductions, the circuit-SAT completeness reduction, and
approximation-preserving reductions between fuzzy optimization problems."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping

from .circuits import all_crisp_inputs
from .compiler import compile_fpvs_to_circuit
from .core import FuzzySet, ToleranceParameter, ell, gamma_violations
from .errors import NoSolution, RatioUndefined
from .fpvs import FPVS, ProofSpace, fuzzy_circuit_sat, outcome
from .report import Report


def _map(fn, items: list, jobs: int) -> list:
    # results come back in instance order regardless of completion order
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True, eq=False)
class AFReduction:
    """Instance map f, answer map g(s, z) and tolerance gamma.

    ``source`` and ``target`` are optional problem names used to catch
    mismatched compositions.
    """

    f: Callable[[Any], Any]
    g: Callable[[Any, FuzzySet], FuzzySet]
    gamma: ToleranceParameter = field(default_factory=ToleranceParameter.one)
    name: str = ""
    source: str = ""
    target: str = ""


def identity_reduction(problem: str = "") -> AFReduction:
    return AFReduction(lambda s: s, lambda s, z: z, ToleranceParameter.one(), "identity", problem, problem)


def apply_af(red: AFReduction, G_solver: Callable[[Any], FuzzySet], s) -> FuzzySet:
    return red.g(s, G_solver(red.f(s)))


def check_af(
    F_oracle: Callable[[Any], FuzzySet],
    G_oracle: Callable[[Any], FuzzySet],
    red: AFReduction,
    instances: Iterable,
    jobs: int = 1,
    length_of=len,
) -> Report:
    """Check that g(s, G(f(s))) gamma-approximates F(s) on every instance."""
    instances = list(instances)

    def one(s):
        want = F_oracle(s)
        got = apply_af(red, G_oracle, s)
        return want, got, gamma_violations(want, got, red.gamma, length_of)

    report = Report("check_af", notes={"reduction": red.name, "gamma": red.gamma.describe()})
    for i, (want, got, bad) in enumerate(_map(one, instances, jobs)):
        report.items.append({"index": i, "ok": not bad, "F": want, "reduced": got})
        if bad:
            report.violate("gamma", f"instance {i}: not a {red.gamma.describe()}-approximation at {bad}", {"index": i, "elements": bad})
    return report


def compose_af(r1: AFReduction, r2: AFReduction) -> AFReduction:
    """A -> B -> C; the tolerance of the composite is the pointwise product."""
    if r1.target and r2.source and r1.target != r2.source:
        raise ValueError(f"cannot compose: {r1.name!r} targets {r1.target!r} but {r2.name!r} starts at {r2.source!r}")
    f1, g1, f2, g2 = r1.f, r1.g, r2.f, r2.g
    return AFReduction(
        f=lambda s: f2(f1(s)),
        g=lambda s, z: g1(s, g2(f1(s), z)),
        gamma=r1.gamma * r2.gamma,
        name=f"{r2.name or 'r2'}.{r1.name or 'r1'}",
        source=r1.source,
        target=r2.target,
    )


# -- completeness of Fuzzy-Circuit-SAT ----------------------------------------


def completeness_reduction_to_circuit_sat(N: FPVS, n: int, t_bound: int, proof_len: int = 1) -> AFReduction:
    """f compiles N with s baked in and the proof bits as free inputs; g is the identity."""

    def f(s: FuzzySet):
        if ell(s) > n:
            raise ValueError(f"input length {ell(s)} exceeds n={n}")
        return compile_fpvs_to_circuit(N, s, proof_len, t_bound)

    return AFReduction(f, lambda s, z: z, ToleranceParameter.one(), "fpvs-to-circuit-sat", N.name, "fuzzy-circuit-sat")


def fpvs_oracle(N: FPVS, proof_len: int, t_bound: int) -> Callable[[FuzzySet], FuzzySet]:
    """s -> outcome of N over all crisp proofs of length proof_len."""
    space = ProofSpace.crisp(N.proof_alphabet, proof_len, exact=True)
    return lambda s: outcome(N, s, space, t_bound)


def circuit_sat_oracle(C) -> FuzzySet:
    """Brute force over every crisp assignment of the circuit inputs."""
    return fuzzy_circuit_sat(C, all_crisp_inputs(C))


# -- fuzzy optimization problems ----------------------------------------------


@dataclass(frozen=True, eq=False)
class FuzzyOptProblem:
    """(instances, SOL, m, goal); ``measure`` is a callable or a {(s, u): m} table."""

    instances: tuple | None
    sol: Callable[[Any], Iterable] | None
    measure: Callable[[Any, Any], int] | Mapping | None
    goal: str = "max"
    name: str = ""
    gamma: ToleranceParameter = field(default_factory=ToleranceParameter.one)

    def __post_init__(self):
        if self.goal not in ("max", "min"):
            raise ValueError(f"goal must be 'max' or 'min', not {self.goal!r}")
        if self.instances is not None:
            object.__setattr__(self, "instances", tuple(self.instances))

    def solutions(self, s) -> list:
        return list(self.sol(s))

    def m(self, s, u) -> int:
        if isinstance(self.measure, Mapping):
            return self.measure[(s, u)]
        return self.measure(s, u)


def optimal_measure(P: FuzzyOptProblem, s) -> int:
    sols = P.solutions(s)
    if not sols:
        raise NoSolution(f"no solutions for instance {s!r}")
    values = [P.m(s, u) for u in sols]
    return max(values) if P.goal == "max" else min(values)


def performance_ratio(P: FuzzyOptProblem, s, u) -> Fraction:
    """max(m/m*, m*/m) in exact rationals."""
    best, m = optimal_measure(P, s), P.m(s, u)
    if best == 0 or m == 0:
        raise RatioUndefined(f"ratio undefined for {s!r}, {u!r}: measure {m}, optimum {best}")
    q = abs(Fraction(m, best))
    return max(q, 1 / q)


@dataclass(frozen=True, eq=False)
class APFReduction:
    f: Callable[[Any, Fraction], Any]
    g: Callable[[Any, Any, Fraction], Any]
    c: Fraction = Fraction(1)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        if self.c <= 0:
            raise ValueError("APF constant c must be positive")


def check_apf(A: FuzzyOptProblem, B: FuzzyOptProblem, red: APFReduction, instances, r_values) -> Report:
    """Conditions (1), (2), (3) and (5) per (s, r); (4) is recorded as declared."""
    r_values = [Fraction(r) for r in r_values]
    if any(r <= 1 for r in r_values):
        raise ValueError("every r must be a rational > 1")
    report = Report("check_apf", notes={"condition 4": "declared, not decided", "c": red.c})
    b_instances = set(B.instances or ())
    for s in instances:
        sols_a = A.solutions(s)
        for r in r_values:
            target = red.f(s, r)
            where = {"instance": s, "r": r}
            item = {"instance": s, "r": r, "target": target, "ok": True}
            report.items.append(item)
            failures_before = len(report.violations)
            if target not in b_instances:
                report.violate("1", f"f({s!r}, {r}) = {target!r} is not an instance of {B.name or 'B'}", where)
                item["ok"] = False
                continue
            sols_b = B.solutions(target)
            if sols_a and not sols_b:
                report.violate("2", f"{s!r} has solutions but f({s!r}, {r}) has none", where)
            bound = 1 + red.c * (r - 1)
            for u in sols_b:
                back = red.g(s, u, r)
                if back not in sols_a:
                    report.violate("3", f"g({s!r}, {u!r}, {r}) = {back!r} is not a solution of {s!r}", dict(where, u=u))
                    continue
                try:
                    rb = performance_ratio(B, target, u)
                    ra = performance_ratio(A, s, back)
                except RatioUndefined as exc:
                    report.violate("ratio", str(exc), dict(where, u=u))
                    continue
                if rb <= r and ra > bound:
                    report.violate("5", f"R_B = {rb} <= {r} but R_A = {ra} > {bound}", dict(where, u=u))
            item["ok"] = len(report.violations) == failures_before
    return report


def is_npao_container(P: FuzzyOptProblem) -> Report:
    """Structural check only: enumerable instances, a SOL enumerator and a total measure."""
    report = Report("is_npao_container", notes={"gamma class": P.gamma.klass, "goal": P.goal})
    if P.instances is None:
        report.violate("instances", "no instance enumeration supplied")
    if P.sol is None or not callable(P.sol):
        report.violate("sol", "no solution enumerator supplied")
    if P.measure is None:
        report.violate("measure", "no measure supplied")
    if not report.ok:
        return report
    for s in P.instances:
        try:
            sols = P.solutions(s)
        except Exception as exc:  # noqa: BLE001 - any failure is a structural defect
            report.violate("sol", f"SOL({s!r}) failed: {exc}", s)
            continue
        for u in sols:
            try:
                value = P.m(s, u)
            except Exception as exc:  # noqa: BLE001
                report.violate("measure", f"m({s!r}, {u!r}) undefined: {exc!r}", [s, u])
                continue
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                report.violate("measure", f"m({s!r}, {u!r}) = {value!r} is not a natural number", [s, u])
        report.items.append({"instance": s, "solutions": len(sols)})
    return report
