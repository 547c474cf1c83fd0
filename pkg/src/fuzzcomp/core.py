"""Finite-support fuzzy sets, fuzzy strings and gamma-approximation.

All degrees are :class:`fractions.Fraction` values in ``[0, 1]``; nothing in
this module rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

from .errors import DegreeError, InvalidEta
from .report import Report

ZERO = Fraction(0)
ONE = Fraction(1)


def as_degree(value: Any) -> Fraction:
    """Parse ``value`` (Fraction, int, ``"p/q"`` string or float) as a degree."""
    if isinstance(value, Fraction):
        q = value
    elif isinstance(value, bool):
        raise DegreeError(f"not a degree: {value!r}")
    elif isinstance(value, (int, str)):
        try:
            q = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DegreeError(f"not a degree: {value!r}") from exc
    elif isinstance(value, float):
        q = Fraction(str(value))
    else:
        raise DegreeError(f"not a degree: {value!r}")
    if not ZERO <= q <= ONE:
        raise DegreeError(f"degree out of [0,1]: {value}")
    return q


def format_degree(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class FuzzySet:
    """A finite-support fuzzy subset of some universe.

    Only positive degrees are stored, sorted by element, so iteration,
    equality and serialization are deterministic.  Elements must be hashable
    and mutually comparable.
    """

    __slots__ = ("universe", "_pairs", "_map")

    def __init__(self, pairs: Iterable[tuple[Hashable, Any]] | Mapping = (), universe: str = ""):
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        table: dict = {}
        for elem, deg in pairs:
            if elem in table:
                raise ValueError(f"duplicate element {elem!r}")
            table[elem] = as_degree(deg)
        self._map = {k: v for k, v in table.items() if v > 0}
        self._pairs = tuple(sorted(self._map.items(), key=lambda kv: kv[0]))
        self.universe = universe

    @classmethod
    def _trusted(cls, table: dict, universe: str = "") -> "FuzzySet":
        # table already holds positive Fractions in [0,1]
        obj = cls.__new__(cls)
        obj._map = table
        obj._pairs = tuple(sorted(table.items(), key=lambda kv: kv[0]))
        obj.universe = universe
        return obj

    def __call__(self, x) -> Fraction:
        return self._map.get(x, ZERO)

    def __iter__(self) -> Iterator[tuple[Any, Fraction]]:
        return iter(self._pairs)

    def __len__(self) -> int:
        return len(self._pairs)

    def __bool__(self) -> bool:
        return bool(self._pairs)

    def __contains__(self, x) -> bool:
        return x in self._map

    def __eq__(self, other) -> bool:
        if not isinstance(other, FuzzySet):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __repr__(self) -> str:
        body = ", ".join(f"({e!r}, {format_degree(d)})" for e, d in self._pairs)
        return f"FuzzySet({{{body}}})"

    @property
    def pairs(self) -> tuple[tuple[Any, Fraction], ...]:
        return self._pairs

    def support(self) -> tuple:
        return tuple(e for e, _ in self._pairs)

    def core(self) -> tuple:
        return tuple(e for e, d in self._pairs if d == ONE)

    def degrees(self) -> set[Fraction]:
        return set(self._map.values())

    def as_dict(self) -> dict:
        return dict(self._map)

    def to_json(self) -> dict:
        return {
            "universe": self.universe,
            "pairs": [[e, format_degree(d)] for e, d in self._pairs],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "FuzzySet":
        return cls([(e, d) for e, d in doc["pairs"]], universe=doc.get("universe", ""))


def membership(s: FuzzySet, x) -> Fraction:
    return s(x)


def alpha_cut(s: FuzzySet, gamma) -> tuple:
    """Elements with degree >= gamma; the 0-cut is taken to be the support."""
    gamma = as_degree(gamma)
    if gamma == 0:
        return s.support()
    return tuple(e for e, d in s if d >= gamma)


def crisp_embed(x: str, universe: str = "") -> FuzzySet:
    return FuzzySet._trusted({x: ONE}, universe)


def ell(s: FuzzySet) -> int:
    """Length of a fuzzy input: the longest string in its support (0 if empty)."""
    return max((len(x) for x in s.support()), default=0)


# -- distances ----------------------------------------------------------------


def normalized_hamming(x: str, z: str) -> Fraction:
    if len(x) != len(z):
        return ONE
    if not x:
        return ZERO
    return Fraction(sum(a != b for a, b in zip(x, z)), len(x))


DISTANCES: dict[str, Callable[[str, str], Fraction]] = {"hamming": normalized_hamming}


# -- eta ----------------------------------------------------------------------


@dataclass(frozen=True)
class Eta:
    """Strictly decreasing piecewise-linear map [0,1] -> [0,1] through sample points."""

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        pts = tuple((Fraction(a), Fraction(b)) for a, b in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise InvalidEta("eta needs at least the two endpoints")
        if pts[0] != (ZERO, ONE) or pts[-1] != (ONE, ZERO):
            raise InvalidEta("eta must satisfy eta(0)=1 and eta(1)=0")
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if not x1 > x0:
                raise InvalidEta(f"eta abscissae not increasing at {x1}")
            if not y1 < y0:
                raise InvalidEta(f"eta not strictly decreasing at {x1}")

    @classmethod
    def linear(cls) -> "Eta":
        return cls(((ZERO, ONE), (ONE, ZERO)))

    def __call__(self, gamma) -> Fraction:
        gamma = Fraction(gamma)
        for (x0, y0), (x1, y1) in zip(self.points, self.points[1:]):
            if x0 <= gamma <= x1:
                return y0 + (y1 - y0) * (gamma - x0) / (x1 - x0)
        raise DegreeError(f"eta argument out of [0,1]: {gamma}")

    def to_json(self) -> list:
        return [[format_degree(a), format_degree(b)] for a, b in self.points]


@dataclass(frozen=True)
class FuzzyString:
    quantity: FuzzySet
    target: str
    eta: Eta = field(default_factory=Eta.linear)
    distance: str = "hamming"

    def to_json(self) -> dict:
        doc = self.quantity.to_json()
        doc.update(target=self.target, eta=self.eta.to_json(), distance=self.distance)
        return doc

    @classmethod
    def from_json(cls, doc: Mapping) -> "FuzzyString":
        eta = Eta(tuple((Fraction(a), Fraction(b)) for a, b in doc.get("eta", [["0", "1"], ["1", "0"]])))
        return cls(FuzzySet.from_json(doc), doc["target"], eta, doc.get("distance", "hamming"))


def validate_fuzzy_string(s: FuzzyString) -> Report:
    """Check the target and ball conditions of a fuzzy string.

    The ball condition only needs checking at gamma = s(x) for each support
    element x, since eta is decreasing.
    """
    if not isinstance(s.eta, Eta):
        raise InvalidEta("eta must be an Eta instance")
    report = Report("validate_fuzzy_string")
    d = DISTANCES[s.distance]
    if s.quantity(s.target) != ONE:
        report.violate("target", f"s(x0) = {s.quantity(s.target)} != 1", s.target)
    for x, deg in s.quantity:
        dist, bound = d(s.target, x), s.eta(deg)
        if dist > bound:
            report.violate("ball", f"d(x0,x) = {dist} > eta({deg}) = {bound}", x)
    return report


# -- tolerance parameters -----------------------------------------------------

TOLERANCE_CLASSES = ("one", "const", "poly", "exp")


@dataclass(frozen=True)
class ToleranceParameter:
    """An imprecision tolerance n -> gamma(n) >= 1, tagged with its growth class.

    ``params`` holds the constant (const), ascending polynomial coefficients
    (poly), or ``(coefficient, base)`` (exp: c * base**n).
    """

    kind: str
    params: tuple = ()
    factors: tuple["ToleranceParameter", ...] = ()

    def __post_init__(self):
        if self.kind not in TOLERANCE_CLASSES + ("product",):
            raise ValueError(f"unknown tolerance class {self.kind!r}")
        object.__setattr__(self, "params", tuple(Fraction(p) for p in self.params))

    @classmethod
    def one(cls) -> "ToleranceParameter":
        return cls("one")

    @classmethod
    def const(cls, c) -> "ToleranceParameter":
        return cls("const", (c,))

    @classmethod
    def poly(cls, *coeffs) -> "ToleranceParameter":
        return cls("poly", coeffs)

    @classmethod
    def exp(cls, base, coeff=1) -> "ToleranceParameter":
        return cls("exp", (coeff, base))

    @property
    def klass(self) -> str:
        if self.kind != "product":
            return self.kind
        return max((f.klass for f in self.factors), key=TOLERANCE_CLASSES.index)

    def __call__(self, n: int) -> Fraction:
        if self.kind == "one":
            value = ONE
        elif self.kind == "const":
            value = self.params[0]
        elif self.kind == "poly":
            value = sum((c * n**i for i, c in enumerate(self.params)), ZERO)
        elif self.kind == "exp":
            value = self.params[0] * self.params[1] ** n
        else:
            value = math.prod((f(n) for f in self.factors), start=ONE)
        if value < 1:
            raise ValueError(f"tolerance {self.describe()} is {value} < 1 at n={n}")
        return value

    def __mul__(self, other: "ToleranceParameter") -> "ToleranceParameter":
        return ToleranceParameter("product", factors=(self, other))

    def describe(self) -> str:
        if self.kind == "one":
            return "1"
        if self.kind == "const":
            return format_degree(self.params[0]).removesuffix("/1")
        if self.kind == "product":
            return "*".join(f"({f.describe()})" for f in self.factors)
        params = self.params[::-1] if self.kind == "exp" else self.params
        return f"{self.kind}:" + ",".join(format_degree(p).removesuffix("/1") for p in params)

    def to_json(self) -> str:
        return self.describe()

    @classmethod
    def parse(cls, text: str) -> "ToleranceParameter":
        """Parse ``"1"``, ``"3/2"``, ``"poly:1,0,1"`` or ``"exp:2"`` / ``"exp:2,3"`` (base, coeff)."""
        text = text.strip()
        if ":" not in text:
            value = Fraction(text)
            return cls.one() if value == 1 else cls.const(value)
        kind, _, rest = text.partition(":")
        args = [Fraction(a) for a in rest.split(",") if a]
        if kind == "poly":
            return cls.poly(*args)
        if kind == "exp":
            return cls.exp(*args)
        raise ValueError(f"cannot parse tolerance {text!r}")


def gamma_approximates(
    F: FuzzySet,
    G: FuzzySet,
    gamma: ToleranceParameter,
    length_of: Callable[[Any], int] = len,
) -> bool:
    """True iff F(x)/gamma(|x|) <= G(x) <= gamma(|x|) F(x) everywhere.

    Outside both supports the condition holds trivially at 0.
    """
    return not gamma_violations(F, G, gamma, length_of)


def gamma_violations(F: FuzzySet, G: FuzzySet, gamma, length_of=len) -> list:
    bad = []
    for x in sorted(set(F.support()) | set(G.support())):
        g = gamma(length_of(x))
        f_x, g_x = F(x), G(x)
        if not (f_x / g <= g_x <= g * f_x):
            bad.append(x)
    return bad
