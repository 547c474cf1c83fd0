"""Deterministic fuzzy Turing machines.

A machine has an input/work tape (initially ``¢x$``), a read-only auxiliary
tape holding ``¢1^l`` for ``l = ell(s)``, and a write-only output tape.
Simulation is forward and sparse: only configurations with positive degree
are ever materialized.  With a safe tuple whose aggregations have 0 as
neutral element (every standard tuple) this equals quantifying over all
configurations.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping

from .core import FuzzySet, ToleranceParameter, as_degree, ell, format_degree, gamma_approximates
from .errors import MachineError, NotHalted
from .operators import STANDARD, SafeTuple, tuple_from_json
from .report import Report

LEFT_END, RIGHT_END, BLANK = "¢", "$", "#"
AUX_ALPHABET = (LEFT_END, RIGHT_END, "1", BLANK)
MOVES = (-1, 0, 1)
LAMBDA = ""


@dataclass(frozen=True, order=True)
class Configuration:
    """``u q v ♮ r ♮ w`` plus, for proof verifiers, the proof tape ``y`` and its head.

    The work head scans the first symbol of ``right`` (a blank when empty);
    trailing blanks of ``right`` are never stored.
    """

    left: str
    state: str
    right: str
    aux: int
    output: str
    proof: str = ""
    proof_pos: int = 0

    @property
    def head_symbol(self) -> str:
        return self.right[0] if self.right else BLANK

    @property
    def tape_length(self) -> int:
        return len(self.left) + len(self.right)

    def render(self) -> str:
        text = f"{self.left}[{self.state}]{self.right}♮{self.aux}♮"
        if self.proof or self.proof_pos:
            text += f"{self.proof[:self.proof_pos]}^{self.proof[self.proof_pos:]}♮"
        return text + self.output

    def to_json(self) -> str:
        return self.render()


def aux_symbol(r: int, length: int) -> str:
    # aux tape reads ¢ 1^length; positions are confined to [0, length]
    return LEFT_END if r == 0 else "1"


@dataclass(frozen=True, eq=False)
class DFTM:
    """Machine description ``(Q, Delta, Sigma1, Sigma2, Gamma, delta, q0, F)`` with its tuple.

    ``delta`` maps ``(q, s1, s2)`` to a FuzzySet over moves
    ``(p, tau, out, d1, d2)``; ``out == ""`` writes nothing.  The output
    alphabet always contains the blank, which is never written.
    """

    states: tuple
    input_alphabet: tuple
    work_alphabet: tuple
    output_alphabet: tuple
    delta: Mapping[tuple, FuzzySet]
    initial: str
    finals: frozenset
    ops: SafeTuple = STANDARD
    name: str = ""

    key_arity = 3

    def __post_init__(self):
        set_ = lambda k, v: object.__setattr__(self, k, v)  # noqa: E731
        set_("states", tuple(self.states))
        set_("input_alphabet", tuple(self.input_alphabet))
        work = tuple(self.work_alphabet)
        for sym in (LEFT_END, RIGHT_END, BLANK) + self.input_alphabet:
            if sym not in work:
                work += (sym,)
        set_("work_alphabet", work)
        out = tuple(self.output_alphabet)
        if BLANK not in out:
            out += (BLANK,)
        set_("output_alphabet", out)
        set_("finals", frozenset(self.finals))
        set_("delta", dict(self.delta))
        self._validate()

    # -- structure ------------------------------------------------------------

    @property
    def read_alphabets(self) -> tuple:
        return (self.work_alphabet, AUX_ALPHABET)

    def _validate(self) -> None:
        if self.initial not in self.states:
            raise MachineError(f"initial state {self.initial!r} not in Q")
        if not self.finals <= set(self.states):
            raise MachineError(f"halting states {sorted(self.finals - set(self.states))} not in Q")
        if len(set(self.states)) != len(self.states):
            raise MachineError("duplicate states")
        writable = set(self.output_alphabet) - {BLANK}
        for key, image in self.delta.items():
            if len(key) != self.key_arity:
                raise MachineError(f"transition key {key!r} has wrong arity")
            q, *read = key
            if q not in self.states:
                raise MachineError(f"unknown state {q!r} in {key!r}")
            if q in self.finals:
                raise MachineError(f"delta defined on halting state {q!r}")
            for sym, alphabet in zip(read, self.read_alphabets):
                if sym not in alphabet:
                    raise MachineError(f"symbol {sym!r} in {key!r} outside its tape alphabet")
            if not isinstance(image, FuzzySet):
                raise MachineError(f"delta{key!r} is not a FuzzySet")
            for move, _ in image:
                if len(move) != self.key_arity + 2:
                    raise MachineError(f"move {move!r} has wrong arity")
                p, tau, out, *dirs = move
                if p not in self.states:
                    raise MachineError(f"unknown target state {p!r}")
                if tau not in self.work_alphabet:
                    raise MachineError(f"written symbol {tau!r} not in work alphabet")
                if out != LAMBDA and out not in writable:
                    raise MachineError(f"output symbol {out!r} not writable")
                if any(d not in MOVES for d in dirs):
                    raise MachineError(f"bad head move in {move!r}")

    @cached_property
    def _table(self) -> dict:
        """delta with each move's canonical index key, sorted, for fast stepping."""
        rank = [{s: i for i, s in enumerate(alpha)} for alpha in (self.states,) + self.read_alphabets]
        out_rank = {s: i + 1 for i, s in enumerate(self.output_alphabet)}
        out_rank[LAMBDA] = 0
        table = {}
        for key, image in self.delta.items():
            base = tuple(r[s] for r, s in zip(rank, key))
            entries = []
            for move, deg in image:
                dirs = move[3:]
                entries.append((move, deg, base + dirs + (out_rank[move[2]],)))
            entries.sort(key=lambda e: e[2])
            table[key] = tuple(entries)
        return table

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_transitions(cls, transitions: Iterable[tuple], **kwargs) -> "DFTM":
        """Build from ``(key, move, degree)`` triples."""
        grouped: dict = defaultdict(list)
        for key, move, deg in transitions:
            grouped[tuple(key)].append((tuple(move), deg))
        delta = {k: FuzzySet(v, universe="moves") for k, v in grouped.items()}
        return cls(delta=delta, **kwargs)

    def transitions(self) -> list[tuple]:
        return sorted((k, m, d) for k, image in self.delta.items() for m, d in image)

    def to_json(self) -> dict:
        return {
            "kind": "dftm",
            "name": self.name,
            "states": list(self.states),
            "inputAlphabet": list(self.input_alphabet),
            "workAlphabet": list(self.work_alphabet),
            "outputAlphabet": list(self.output_alphabet),
            "initial": self.initial,
            "finals": sorted(self.finals),
            "tuple": self.ops.to_json(),
            "transitions": [
                {"from": list(k), "to": list(m), "degree": format_degree(d)} for k, m, d in self.transitions()
            ],
        }

    @classmethod
    def _common_from_json(cls, doc: Mapping) -> dict:
        return dict(
            states=tuple(doc["states"]),
            input_alphabet=tuple(doc["inputAlphabet"]),
            work_alphabet=tuple(doc["workAlphabet"]),
            output_alphabet=tuple(doc["outputAlphabet"]),
            initial=doc["initial"],
            finals=frozenset(doc["finals"]),
            ops=tuple_from_json(doc.get("tuple")),
            name=doc.get("name", ""),
        )

    @classmethod
    def from_json(cls, doc: Mapping) -> "DFTM":
        trans = [(t["from"], t["to"], as_degree(t["degree"])) for t in doc["transitions"]]
        return cls.from_transitions(trans, **cls._common_from_json(doc))


@dataclass
class RunResult:
    output: FuzzySet
    time: int
    final_degrees: dict
    trace: list | None = None

    def to_json(self) -> dict:
        doc = {
            "output": self.output.to_json(),
            "time": self.time,
            "final": [
                [t, c.render(), format_degree(d)] for (t, c), d in sorted(self.final_degrees.items())
            ],
        }
        if self.trace is not None:
            doc["trace"] = [[[c.render(), format_degree(d)] for c, d in conf] for conf in self.trace]
        return doc


# -- semantics ---------------------------------------------------------------


def initial_config(M: DFTM, s: FuzzySet) -> FuzzySet:
    """conf_0: degree s(x) on ``q0 ¢x$ ♮ 0 ♮ λ`` for every x in supp(s)."""
    table = {}
    for x, deg in s:
        _check_input(M, x)
        table[Configuration("", M.initial, LEFT_END + x + RIGHT_END, 0, LAMBDA)] = deg
    return FuzzySet._trusted(table, "conf")


def _check_input(M: DFTM, x: str) -> None:
    bad = set(x) - set(M.input_alphabet)
    if bad:
        raise MachineError(f"input {x!r} uses symbols {sorted(bad)} outside the input alphabet")


def successors(M: DFTM, c: Configuration, length: int):
    """Yield ``(target, delta_degree, index_key)`` for each applicable move of ``c``.

    Moves leaving the tape (head below cell 0, aux head outside [0, length])
    produce no successor.
    """
    if c.state in M.finals:
        return
    key = (c.state, c.head_symbol, aux_symbol(c.aux, length))
    proof = M.key_arity == 4
    if proof:
        key += (c.proof[c.proof_pos] if c.proof_pos < len(c.proof) else BLANK,)
    for move, deg, okey in M._table.get(key, ()):
        head = len(c.left) + move[3]
        r = c.aux + move[4]
        if head < 0 or not 0 <= r <= length:
            continue
        pos = c.proof_pos
        if proof:
            pos += move[5]
            if pos < 0:
                continue
        cells = c.left + move[1] + c.right[1:]
        yield (
            Configuration(cells[:head], move[0], cells[head:].rstrip(BLANK), r, c.output + move[2], c.proof, pos),
            deg,
            okey,
        )


def _advance(M: DFTM, conf: Mapping, length: int) -> dict:
    mu1, mu2 = M.ops.mu1, M.ops.mu2
    contrib: dict = defaultdict(list)
    for c, a in conf.items():
        for target, deg, okey in successors(M, c, length):
            term = mu1(a, deg)
            if term > 0:
                contrib[target].append((okey, term))
    nxt = {}
    for target, terms in contrib.items():
        if len(terms) > 1:
            terms.sort(key=lambda e: e[0])
        value = mu2([t for _, t in terms])
        if value > 0:
            nxt[target] = value
    return nxt


def step(M: DFTM, conf: FuzzySet, length: int) -> FuzzySet:
    """conf_{i+1} from conf_i for a run whose input has length ``length``."""
    return FuzzySet._trusted(_advance(M, conf.as_dict(), length), "conf")


def evolve(M: DFTM, conf0: Mapping, length: int, max_steps: int, keep_trace: bool = False) -> RunResult:
    """Iterate until only halting configurations carry positive degree.

    The running time is the first such step.  final_M aggregates each
    halting configuration's degrees over time with mu3, and the output
    groups those by output string with xi.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    ops, finals = M.ops, M.finals
    history: dict = defaultdict(list)
    trace = [] if keep_trace else None
    conf = dict(conf0)
    t = 0
    while True:
        if trace is not None:
            trace.append(FuzzySet._trusted(dict(conf), "conf"))
        live = False
        for c, d in conf.items():
            if c.state in finals:
                history[c].append(d)
            else:
                live = True
        if not live:
            break
        if t >= max_steps:
            raise NotHalted(max_steps)
        conf = _advance(M, conf, length)
        t += 1

    final_deg = {c: ops.mu3(ds) for c, ds in history.items()}
    # every reachable configuration has |uv| <= t + length + 2
    bound = t + length + 2
    groups: dict = defaultdict(list)
    for c in sorted(final_deg):
        if c.tape_length <= bound:
            groups[c.output].append(final_deg[c])
    output = {}
    for w, ds in groups.items():
        v = ops.xi(ds)
        if v > 0:
            output[w] = v
    return RunResult(
        FuzzySet._trusted(output, "output"),
        t,
        {(t, c): d for c, d in final_deg.items() if d > 0},
        trace,
    )


def run(M: DFTM, s: FuzzySet, max_steps: int, trace: bool = False) -> RunResult:
    """Run M on fuzzy input s; raises NotHalted past ``max_steps``."""
    return evolve(M, initial_config(M, s).as_dict(), ell(s), max_steps, trace)


def approx_solves(
    M: DFTM,
    L: Callable[[FuzzySet], FuzzySet],
    instances: Iterable[FuzzySet],
    gamma: ToleranceParameter,
    max_steps: int,
) -> Report:
    report = Report("approx_solves", notes={"gamma": gamma.describe()})
    for i, s in enumerate(instances):
        got, want = run(M, s, max_steps).output, L(s)
        report.items.append(
            {"index": i, "ok": gamma_approximates(got, want, gamma), "machine": got, "expected": want}
        )
    return report
