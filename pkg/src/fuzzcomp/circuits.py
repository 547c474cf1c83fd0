"""Layered fuzzy circuits over bit-valued variables.

Assignments of a level's variables are bitstrings in the level's label
order.  A gate maps an assignment of its inputs to a fuzzy set over
assignments of its outputs, either through an explicit table or an
intensional rule.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping

from .core import ONE, FuzzySet, format_degree
from .errors import CircuitError
from .operators import STANDARD, TNORMS, SafeTuple, fold_aggregate, tuple_from_json
from .report import Report

EMPTY = FuzzySet((), "bits")


def crisp_bits(bits: str) -> FuzzySet:
    return FuzzySet._trusted({bits: ONE}, "bits")


# named crisp rules usable from JSON; each maps (input bits, output arity) -> output bits
RULES: dict[str, Callable[[str, int], str]] = {
    "identity": lambda b, k: b,
    "not": lambda b, k: "".join("1" if c == "0" else "0" for c in b),
    "and": lambda b, k: str(int(all(c == "1" for c in b))) * k,
    "or": lambda b, k: str(int(any(c == "1" for c in b))) * k,
    "xor": lambda b, k: str(b.count("1") % 2) * k,
    "const0": lambda b, k: "0" * k,
    "const1": lambda b, k: "1" * k,
}


@dataclass(frozen=True, eq=False)
class FuzzyGate:
    inputs: tuple
    outputs: tuple
    table: Mapping[str, FuzzySet] | None = None
    rule: Callable[[str], FuzzySet] | None = None
    rule_name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if self.rule is None and self.rule_name in RULES and self.table is None:
            fn, k = RULES[self.rule_name], len(self.outputs)
            object.__setattr__(self, "rule", lambda bits: crisp_bits(fn(bits, k)))

    @classmethod
    def named(cls, name: str, inputs, outputs) -> "FuzzyGate":
        if name not in RULES:
            raise KeyError(f"unknown gate rule {name!r}")
        return cls(inputs, outputs, rule_name=name)

    def __call__(self, bits: str) -> FuzzySet:
        if self.rule is not None:
            return self.rule(bits)
        return self.table.get(bits, EMPTY)

    @property
    def size(self) -> int:
        return 1 + len(self.inputs) + len(self.outputs)

    def to_json(self) -> dict:
        doc = {"inputs": list(self.inputs), "outputs": list(self.outputs)}
        if self.table is not None:
            doc["table"] = {
                row: [[w, format_degree(d)] for w, d in image] for row, image in sorted(self.table.items())
            }
        else:
            doc["rule"] = self.rule_name
        return doc


@dataclass(frozen=True, eq=False)
class FuzzyConstant:
    labels: tuple
    value: FuzzySet

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "const": [[w, format_degree(d)] for w, d in self.value]}


@dataclass(frozen=True, eq=False)
class FuzzyCircuit:
    """Input labels, optional fuzzy constants, levels of gates and designated outputs.

    ``combiner`` names the t-norm folded across the gates of one level
    (mu'_2); ``ops`` supplies mu1 and mu3.
    """

    inputs: tuple
    levels: tuple
    outputs: tuple | None = None
    constants: tuple = ()
    ops: SafeTuple = STANDARD
    combiner: str = "min"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "levels", tuple(tuple(level) for level in self.levels))
        object.__setattr__(self, "constants", tuple(self.constants))
        if self.outputs is not None:
            object.__setattr__(self, "outputs", tuple(self.outputs))

    def level_labels(self, t: int) -> tuple:
        if t == 0:
            return self.inputs + tuple(l for c in self.constants for l in c.labels)
        return tuple(l for g in self.levels[t - 1] for l in g.outputs)

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def designated(self) -> tuple:
        return self.outputs if self.outputs is not None else self.level_labels(self.depth)

    def gates(self):
        for level in self.levels:
            yield from level

    def to_json(self) -> dict:
        if "compiled_from" in self.meta:
            return {"kind": "circuit", "compiled_from": self.meta["compiled_from"]}
        doc = {
            "kind": "circuit",
            "inputs": list(self.inputs),
            "constants": [c.to_json() for c in self.constants],
            "levels": [[g.to_json() for g in level] for level in self.levels],
            "combiner": self.combiner,
            "tuple": self.ops.to_json(),
        }
        if self.outputs is not None:
            doc["outputs"] = list(self.outputs)
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "FuzzyCircuit":
        if "compiled_from" in doc:
            from .compiler import circuit_from_compiled

            return circuit_from_compiled(doc["compiled_from"])
        levels = []
        for level in doc["levels"]:
            gates = []
            for g in level:
                if "table" in g:
                    table = {row: FuzzySet(pairs, "bits") for row, pairs in g["table"].items()}
                    gates.append(FuzzyGate(g["inputs"], g["outputs"], table=table))
                else:
                    gates.append(FuzzyGate.named(g["rule"], g["inputs"], g["outputs"]))
            levels.append(gates)
        constants = [FuzzyConstant(tuple(c["labels"]), FuzzySet(c["const"], "bits")) for c in doc.get("constants", [])]
        return cls(
            inputs=tuple(doc["inputs"]),
            levels=levels,
            outputs=tuple(doc["outputs"]) if "outputs" in doc else None,
            constants=tuple(constants),
            ops=tuple_from_json(doc.get("tuple")),
            combiner=doc.get("combiner", "min"),
        )


def _is_bits(w, k: int) -> bool:
    return isinstance(w, str) and len(w) == k and set(w) <= {"0", "1"}


def validate_circuit(C: FuzzyCircuit) -> Report:
    report = Report("validate_circuit")
    if C.combiner not in TNORMS:
        report.violate("combiner", f"unknown cross-gate combiner {C.combiner!r}")
    level0 = C.level_labels(0)
    for label, count in sorted(Counter(level0).items()):
        if count > 1:
            report.violate("duplicate-input", f"level-0 label {label!r} appears {count} times", label)
    for c in C.constants:
        for w, _ in c.value:
            if not _is_bits(w, len(c.labels)):
                report.violate("arity", f"constant value {w!r} does not match labels {c.labels}", w)
    available = set(level0)
    for t, level in enumerate(C.levels, start=1):
        if not level:
            report.violate("empty-level", f"level {t} has no gates", t)
        produced = Counter(l for g in level for l in g.outputs)
        for label, count in sorted(produced.items()):
            if count > 1:
                report.violate("duplicate-output", f"label {label!r} emitted {count} times at level {t}", [t, label])
        for k, g in enumerate(level):
            for label in g.inputs:
                if label not in available:
                    report.violate("dangling-wire", f"gate {k} at level {t} reads undefined {label!r}", [t, k, label])
            if (g.table is None) == (g.rule is None):
                report.violate("gate-semantics", f"gate {k} at level {t} needs exactly one of table/rule", [t, k])
            if g.table is not None:
                for row, image in g.table.items():
                    if not _is_bits(row, len(g.inputs)):
                        report.violate("arity", f"row {row!r} of gate {k} at level {t} has wrong arity", [t, k, row])
                    for w, _ in image:
                        if not _is_bits(w, len(g.outputs)):
                            report.violate("arity", f"output {w!r} of gate {k} at level {t} has wrong arity", [t, k, w])
        available = set(produced)
    for label in C.designated:
        if label not in available:
            report.violate("dangling-wire", f"designated output {label!r} not produced by the last level", label)
    return report


def circuit_size(C: FuzzyCircuit) -> int:
    """Number of gates plus variable-to-gate and gate-to-variable wires."""
    return sum(g.size for g in C.gates())


def _level0(C: FuzzyCircuit, s: FuzzySet, combine) -> dict:
    n = len(C.inputs)
    for x in s.support():
        if not _is_bits(x, n):
            raise ValueError(f"input {x!r} is not an assignment of {n} bits")
    if not C.constants:
        return s.as_dict()
    conf = {}
    for x, a in s:
        for combo in product(*(c.value.pairs for c in C.constants)):
            v = combine([a] + [d for _, d in combo])
            if v > 0:
                conf[x + "".join(w for w, _ in combo)] = v
    return conf


def evaluate(C: FuzzyCircuit, s: FuzzySet) -> FuzzySet:
    """Level-by-level outcome of C on s, projected onto the designated outputs."""
    report = validate_circuit(C)
    if not report.ok:
        raise CircuitError(report)
    mu1, mu3 = C.ops.mu1, C.ops.mu3
    tnorm = TNORMS[C.combiner]

    def combine(values):
        return fold_aggregate(tnorm, values)

    conf = _level0(C, s, combine)
    labels = C.level_labels(0)
    for level in C.levels:
        pos = {l: i for i, l in enumerate(labels)}
        wiring = [tuple(pos[l] for l in g.inputs) for g in level]
        cache: dict = {}
        contrib: dict = defaultdict(list)
        for v in sorted(conf):
            a = conf[v]
            images = []
            for k, g in enumerate(level):
                bits = "".join(v[i] for i in wiring[k])
                img = cache.get((k, bits))
                if img is None:
                    img = cache[(k, bits)] = g(bits).pairs
                images.append(img)
            for combo in product(*images):
                value = combine([mu1(a, d) for _, d in combo])
                if value > 0:
                    contrib["".join(w for w, _ in combo)].append(value)
        conf = {w: mu3(vals) for w, vals in contrib.items()}
        conf = {w: d for w, d in conf.items() if d > 0}
        labels = tuple(l for g in level for l in g.outputs)
    return FuzzySet._trusted(_project(conf, labels, C.designated, mu3), "bits")


def _project(conf: dict, labels: tuple, wanted: tuple, mu3) -> dict:
    if wanted == labels:
        return conf
    pos = {l: i for i, l in enumerate(labels)}
    idx = [pos[l] for l in wanted]
    groups: dict = defaultdict(list)
    for v in sorted(conf):
        groups["".join(v[i] for i in idx)].append(conf[v])
    out = {w: mu3(ds) for w, ds in groups.items()}
    return {w: d for w, d in out.items() if d > 0}


def all_crisp_inputs(C: FuzzyCircuit) -> list[FuzzySet]:
    n = len(C.inputs)
    return [crisp_bits(format(i, f"0{n}b") if n else "") for i in range(2**n)]
