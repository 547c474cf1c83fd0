"""Auxiliary operator tuples (mu1, mu2, mu3, xi), t-norms and t-conorms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Sequence

from .core import ONE, ZERO
from .errors import EmptyAggregation
from .report import Report

Binary = Callable[[Fraction, Fraction], Fraction]


def t_min(a, b):
    return a if a <= b else b


def t_product(a, b):
    return a * b


def t_lukasiewicz(a, b):
    return max(ZERO, a + b - ONE)


def s_max(a, b):
    return a if a >= b else b


def s_probabilistic(a, b):
    return a + b - a * b


def s_bounded(a, b):
    return min(ONE, a + b)


TNORMS: dict[str, Binary] = {"min": t_min, "product": t_product, "lukasiewicz": t_lukasiewicz}
TCONORMS: dict[str, Binary] = {"max": s_max, "probabilistic_sum": s_probabilistic, "bounded_sum": s_bounded}


def fold_aggregate(op: Binary, values: Sequence[Fraction], empty=None) -> Fraction:
    """Left fold of ``op`` over ``values`` in the given order.

    An empty list returns ``empty`` when supplied (the xi convention) and
    raises :class:`EmptyAggregation` otherwise.
    """
    if not values:
        if empty is None:
            raise EmptyAggregation("aggregation over an empty family")
        return empty
    return reduce(op, values)


@dataclass(frozen=True)
class SafeTuple:
    """The four auxiliary operators driving fuzzy machines and circuits.

    ``mu2``, ``mu3`` take nonempty ordered lists; ``xi`` also accepts the
    empty list.  ``tnorm``/``tconorm`` name the generating operations for
    standard tuples (``None`` for hand-made tuples).
    """

    mu1: Binary
    mu2: Callable[[Sequence[Fraction]], Fraction]
    mu3: Callable[[Sequence[Fraction]], Fraction]
    xi: Callable[[Sequence[Fraction]], Fraction]
    name: str = "custom"
    tnorm: str | None = None
    tconorm: str | None = None

    @property
    def is_standard(self) -> bool:
        return self.tnorm is not None and self.tconorm is not None

    def to_json(self) -> dict:
        if not self.is_standard:
            raise ValueError(f"tuple {self.name!r} has no JSON form")
        return {"tuple": "standard", "tnorm": self.tnorm, "tconorm": self.tconorm}


def standard_tuple(tnorm: str = "min", tconorm: str = "max") -> SafeTuple:
    """mu1 = tnorm; mu2 = mu3 = fold of tconorm; xi likewise with xi([]) = 0."""
    conj, disj = TNORMS[tnorm], TCONORMS[tconorm]

    def agg(values):
        return fold_aggregate(disj, values)

    def xi(values):
        return fold_aggregate(disj, values, empty=ZERO)

    return SafeTuple(conj, agg, agg, xi, f"standard({tnorm},{tconorm})", tnorm, tconorm)


STANDARD = standard_tuple()


def tuple_from_json(doc) -> SafeTuple:
    if doc is None:
        return STANDARD
    if doc.get("tuple", "standard") != "standard":
        raise ValueError(f"unknown tuple kind {doc.get('tuple')!r}")
    return standard_tuple(doc.get("tnorm", "min"), doc.get("tconorm", "max"))


def check_safety(T: SafeTuple, sample_degrees: Sequence[Fraction], max_list_len: int) -> Report:
    """Evaluate the four safety conditions on constant families of each sampled degree."""
    if not sample_degrees:
        raise ValueError("sample_degrees must be nonempty")
    report = Report(f"check_safety[{T.name}]")
    try:
        xi_empty = T.xi([])
    except EmptyAggregation:
        xi_empty = None
    if xi_empty != ZERO:
        report.violate("4", f"xi(empty) = {xi_empty}, expected 0", [])
    for a in sample_degrees:
        if T.mu1(a, a) != a:
            report.violate("1", f"mu1({a},{a}) = {T.mu1(a, a)}", a)
        for k in range(1, max_list_len + 1):
            family = [a] * k
            for cond, op in (("2", T.mu2), ("3", T.mu3), ("4", T.xi)):
                got = op(family)
                if got != a:
                    report.violate(cond, f"constant family of {k} x {a} gave {got}", (a, k))
    return report
