"""JSON artifacts: detection, parsing with schema diagnostics, serialization."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .catalog import CrispTM, binary_increment_tm, identity_tm
from .circuits import FuzzyCircuit, validate_circuit
from .core import FuzzySet, FuzzyString, ToleranceParameter, validate_fuzzy_string
from .dftm import DFTM
from .errors import CircuitError, DegreeError, FuzzCompError, MachineError, SchemaError
from .fpvs import ProofSpace, machine_from_json
from .reductions import FuzzyOptProblem
from .report import Report, jsonable

KINDS = ("fuzzyset", "fuzzystring", "fuzzysets", "proofspace", "dftm", "fpvs", "circuit", "crisp-tm", "af-check", "apf-check")


class ValidationError(FuzzCompError):
    """Well-formed artifact that fails a semantic check."""

    def __init__(self, report: Report):
        self.report = report
        first = report.violations[0]["detail"] if report.violations else "invalid"
        super().__init__(first)


def dumps(doc: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def detect_kind(doc: Any) -> str:
    if isinstance(doc, list):
        return "fuzzysets"
    if not isinstance(doc, dict):
        raise SchemaError("top level must be a JSON object or array")
    if "kind" in doc:
        return doc["kind"]
    if "target" in doc:
        return "fuzzystring"
    if "pairs" in doc:
        return "fuzzyset"
    if "levels" in doc or "compiled_from" in doc:
        return "circuit"
    if "transitions" in doc:
        return "fpvs" if "proofAlphabet" in doc else "dftm"
    if "alphabet" in doc and "length" in doc:
        return "proofspace"
    raise SchemaError("cannot tell the artifact kind; add a \"kind\" field")


def _crisp_tm_from_json(doc) -> CrispTM:
    if "builtin" in doc:
        builtins = {"increment": binary_increment_tm, "identity": identity_tm}
        if doc["builtin"] not in builtins:
            raise SchemaError(f"builtin: unknown machine {doc['builtin']!r}")
        return builtins[doc["builtin"]]()
    trans = {tuple(t["from"]): tuple(t["to"]) for t in doc["transitions"]}
    return CrispTM(
        states=tuple(doc["states"]),
        input_alphabet=tuple(doc["inputAlphabet"]),
        work_alphabet=tuple(doc["workAlphabet"]),
        output_alphabet=tuple(doc["outputAlphabet"]),
        transitions=trans,
        initial=doc["initial"],
        halt=doc["halt"],
        name=doc.get("name", ""),
    )


def crisp_tm_to_json(tm: CrispTM) -> dict:
    return {
        "kind": "crisp-tm",
        "name": tm.name,
        "states": list(tm.states),
        "inputAlphabet": list(tm.input_alphabet),
        "workAlphabet": list(tm.work_alphabet),
        "outputAlphabet": list(tm.output_alphabet),
        "initial": tm.initial,
        "halt": tm.halt,
        "transitions": [{"from": list(k), "to": list(v)} for k, v in sorted(tm.transitions.items())],
    }


def opt_problem_from_json(doc) -> FuzzyOptProblem:
    """{"instances": [...], "solutions": {s: [u]}, "measure": {s: {u: m}}, "goal": ...}."""
    sols = doc.get("solutions")
    table = doc.get("measure")
    measure = None
    if table is not None:
        measure = {(s, u): m for s, row in table.items() for u, m in row.items()}
    return FuzzyOptProblem(
        instances=doc.get("instances"),
        sol=(lambda s: sols.get(s, [])) if sols is not None else None,
        measure=measure,
        goal=doc.get("goal", "max"),
        name=doc.get("name", ""),
        gamma=ToleranceParameter.parse(str(doc.get("gamma", "1"))),
    )


def _from_doc(doc: Any, kind: str):
    if kind == "fuzzyset":
        return FuzzySet.from_json(doc)
    if kind == "fuzzystring":
        return FuzzyString.from_json(doc)
    if kind == "fuzzysets":
        return [FuzzySet.from_json(d) for d in doc]
    if kind == "proofspace":
        return ProofSpace.crisp(doc["alphabet"], int(doc["length"]), bool(doc.get("exact", False)))
    if kind in ("dftm", "fpvs"):
        return machine_from_json(doc)
    if kind == "circuit":
        return FuzzyCircuit.from_json(doc)
    if kind == "crisp-tm":
        return _crisp_tm_from_json(doc)
    if kind in ("af-check", "apf-check"):
        return doc
    raise SchemaError(f"kind: unknown artifact kind {kind!r}")


def load_doc(doc: Any, kind: str | None = None, where: str = "<doc>"):
    kind = kind or detect_kind(doc)
    try:
        value = _from_doc(doc, kind)
    except DegreeError as exc:
        raise SchemaError(f"{where}: {exc}") from exc
    except KeyError as exc:
        raise SchemaError(f"{where}: missing field {exc.args[0]!r}") from exc
    except (TypeError, AttributeError, IndexError) as exc:
        raise SchemaError(f"{where}: malformed {kind}: {exc}") from exc
    except (MachineError, CircuitError) as exc:
        report = getattr(exc, "report", None) or Report(kind)
        if not report.violations:
            report.violate("machine", str(exc))
        raise ValidationError(report) from exc
    except ValueError as exc:
        if isinstance(exc, FuzzCompError):
            raise
        raise SchemaError(f"{where}: {exc}") from exc
    if kind == "circuit":
        report = validate_circuit(value)
        if not report.ok:
            raise ValidationError(report)
    if kind == "fuzzystring":
        report = validate_fuzzy_string(value)
        if not report.ok:
            raise ValidationError(report)
    return value


def parse_artifact(path: str | Path, kind: str | None = None):
    """Load and validate an artifact file.

    Raises SchemaError (bad JSON, missing field, degree out of range) or
    ValidationError (well-formed but semantically invalid).
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return load_doc(doc, kind, str(path))


def serialize(value) -> str:
    if isinstance(value, CrispTM):
        return dumps(crisp_tm_to_json(value))
    if isinstance(value, ProofSpace):
        return dumps(value.to_json())
    if isinstance(value, list):
        return dumps([v.to_json() for v in value])
    if isinstance(value, (DFTM, FuzzyCircuit, FuzzySet, FuzzyString)):
        return dumps(value.to_json())
    return dumps(value)


def parse_fraction(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"not a rational number: {text!r}") from exc
