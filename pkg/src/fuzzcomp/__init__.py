"""Exact-rational toolkit for deterministic fuzzy Turing machines, fuzzy
circuits, fuzzy proof verification and approximate fuzzy reductions."""

from .core import FuzzySet, FuzzyString, ToleranceParameter, crisp_embed, gamma_approximates
from .dftm import DFTM, run
from .operators import SafeTuple, standard_tuple

__version__ = "0.1.0"

__all__ = [
    "DFTM",
    "FuzzySet",
    "FuzzyString",
    "SafeTuple",
    "ToleranceParameter",
    "crisp_embed",
    "gamma_approximates",
    "run",
    "standard_tuple",
]
