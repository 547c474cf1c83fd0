"""Check/validation reports with deterministic JSON rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def jsonable(value: Any) -> Any:
    """Convert reports, fractions, fuzzy sets and containers to plain JSON data."""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in value]
        if isinstance(value, (set, frozenset)):
            items.sort(key=lambda v: json.dumps(v, sort_keys=True))
        return items
    return repr(value)


@dataclass
class Report:
    """Outcome of a validation or a per-instance check.

    ``violations`` collects structural problems (each with a ``kind``, a
    ``detail`` message and optionally a ``witness``); ``items`` collects
    per-instance results, each carrying an ``ok`` flag.
    """

    name: str
    items: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations and all(item.get("ok", True) for item in self.items)

    @property
    def failures(self) -> list[dict]:
        return [item for item in self.items if not item.get("ok", True)]

    def violate(self, kind: str, detail: str, witness: Any = None) -> None:
        entry = {"kind": kind, "detail": detail}
        if witness is not None:
            entry["witness"] = witness
        self.violations.append(entry)

    def kinds(self) -> set[str]:
        return {v["kind"] for v in self.violations}

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "items": jsonable(self.items),
            "violations": jsonable(self.violations),
            "notes": jsonable(self.notes),
        }
