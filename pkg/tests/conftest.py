import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from trilie import BasisVector, Element
from trilie.nambu import SymFunction

settings.register_profile(
    "ci",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

RATIONALS = st.one_of(
    st.integers(min_value=-4, max_value=4),
    st.builds(Fraction, st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=5)),
)


@st.composite
def elements(draw, max_terms=4, index_bound=5):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n):
        fam = draw(st.sampled_from(("L", "M")))
        idx = draw(st.integers(min_value=-index_bound, max_value=index_bound))
        terms[BasisVector(fam, idx)] = draw(RATIONALS)
    return Element(terms)


@st.composite
def sym_functions(draw, max_terms=3):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n):
        key = (
            draw(st.integers(min_value=0, max_value=3)),
            draw(st.integers(min_value=0, max_value=3)),
            draw(st.integers(min_value=-3, max_value=3)),
        )
        terms[key] = draw(RATIONALS)
    return SymFunction(terms)


@pytest.fixture
def element_strategy():
    return elements()


@pytest.fixture
def sym_strategy():
    return sym_functions()
