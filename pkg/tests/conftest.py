from fractions import Fraction as F

import pytest
from hypothesis import strategies as st

from hfkit import PLMap, swap_map, tent_plateau


@pytest.fixture
def g():
    return tent_plateau()


@pytest.fixture
def S():
    return swap_map()


@pytest.fixture
def affine_map():
    return PLMap([(0, F(1, 4)), (1, F(3, 4))])


@st.composite
def pl_self_maps(draw, max_pieces=6, den=12):
    """Random PL self-maps of [0,1] with breakpoints on a small rational grid."""
    inner = sorted(draw(st.sets(st.integers(1, den - 1), max_size=max_pieces - 1)))
    xs = [F(0)] + [F(i, den) for i in inner] + [F(1)]
    ys = [F(draw(st.integers(0, den)), den) for _ in xs]
    return PLMap(zip(xs, ys))


rationals01 = st.fractions(min_value=0, max_value=1, max_denominator=10**4)


ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
