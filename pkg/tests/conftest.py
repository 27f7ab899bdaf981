import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from latticevoa import build_even_lattice  # noqa: E402

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def a1():
    return build_even_lattice([[2]])


@pytest.fixture(scope="session")
def d4():
    return build_even_lattice([[4]])


@pytest.fixture(scope="session")
def hyp():
    return build_even_lattice([[0, 1], [1, 0]])


@st.composite
def even_grams(draw, max_rank=3, bound=4):
    """Symmetric integer matrices with even diagonal and nonzero determinant."""
    from latticevoa.lattice import integer_determinant

    r = draw(st.integers(1, max_rank))
    g = [[0] * r for _ in range(r)]
    for i in range(r):
        g[i][i] = 2 * draw(st.integers(-bound // 2, bound // 2))
        for j in range(i):
            g[i][j] = g[j][i] = draw(st.integers(-bound, bound))
    if integer_determinant(g) == 0:
        g[0][0] = g[0][0] + 2 if g[0][0] >= 0 else g[0][0] - 2
    from hypothesis import assume

    assume(integer_determinant(g) != 0)
    return g


def frac(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
