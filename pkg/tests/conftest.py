from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from powersum_lab.algebra import Poly

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures():
    return FIXTURES


small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, min_degree=0, max_degree=4):
    deg = draw(st.integers(min_degree, max_degree))
    coeffs = draw(st.lists(small_rationals, min_size=deg + 1, max_size=deg + 1))
    if deg > 0 and coeffs[-1] == 0:
        coeffs[-1] = Fraction(1)
    return Poly(coeffs)


@st.composite
def nonzero_polys(draw, min_degree=0, max_degree=4):
    p = draw(polys(min_degree, max_degree))
    return p if not p.is_zero() else Poly([1])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
