import os
import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

from fuzzcomp.core import FuzzySet  # noqa: E402

degrees = st.fractions(min_value=0, max_value=1, max_denominator=24)
positive_degrees = degrees.filter(lambda q: q > 0)


@st.composite
def fuzzy_sets(draw, elements=st.text("01", max_size=4), max_size=5):
    table = draw(st.dictionaries(elements, degrees, max_size=max_size))
    return FuzzySet(table)


def frac(text):
    return Fraction(text)
