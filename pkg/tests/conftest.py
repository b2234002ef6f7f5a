from fractions import Fraction

import pytest
from hypothesis import strategies as st

from preperiodic.poly import PolyMap, Polynomial


def polynomials(arity, max_terms=8, max_exp=3, max_coef=20):
    mono = st.tuples(*[st.integers(0, max_exp)] * arity)
    coef = st.builds(Fraction, st.integers(-max_coef, max_coef), st.integers(1, 6))
    return st.dictionaries(mono, coef, max_size=max_terms).map(lambda d: Polynomial(arity, d))


@st.composite
def poly_pairs(draw, count=2):
    n = draw(st.integers(1, 4))
    return [draw(polynomials(n)) for _ in range(count)]


@pytest.fixture
def fib_map():
    # (x, y) -> (xy, x^2 + xy); Jacobian vanishes at the fixed point (0, 0)
    return PolyMap.from_strings(["x1*x2", "x1^2+x1*x2"])


@pytest.fixture
def quad_map():
    return PolyMap.from_strings(["x1^2-3*x1"])


def fibonacci(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
