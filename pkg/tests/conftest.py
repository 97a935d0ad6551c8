import pytest
from hypothesis import strategies as st

from ergodfa import Dfa, Nfa


@st.composite
def dfas(draw, max_n=6, max_r=3, min_r=1):
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(min_r, max_r))
    table = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=r, max_size=r),
                          min_size=n, max_size=n))
    phi = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    q0 = draw(st.integers(0, n - 1))
    return Dfa.from_table(table, phi, q0)


@st.composite
def nfas(draw, max_n=5, max_r=3):
    """NFA whose transition sets are all non-empty."""
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(1, max_r))
    cell = st.frozensets(st.integers(0, n - 1), min_size=1, max_size=n)
    rows = draw(st.lists(st.lists(cell, min_size=r, max_size=r), min_size=n, max_size=n))
    phi = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return Nfa(rows, phi, draw(st.integers(0, n - 1)), r)


def symbol_words(r, max_len=6):
    return st.lists(st.integers(0, r - 1), max_size=max_len)


@pytest.fixture
def two_state():
    # q0: a->q1, b->q0 ; q1: a->q0, b->q1
    return Dfa.from_table([[1, 0], [0, 1]], [0, 1])


@pytest.fixture
def parity():
    # a toggles, b loops, accept odd number of a's
    return Dfa.from_table([[1, 0], [0, 1]], [0, 1])


@pytest.fixture
def cycle3():
    return Dfa.from_table([[1, 1], [2, 2], [0, 0]], [0, 0, 0])


@pytest.fixture
def two_cycle():
    return Dfa.from_table([[1, 1], [0, 0]], [0, 1])


@pytest.fixture
def full_shuffle():
    return Dfa.from_table([[0, 0], [0, 0], [0, 0]], [1, 0, 1])


@pytest.fixture
def two_sinks():
    return Dfa.from_table([[1, 2], [1, 1], [2, 2]], [0, 0, 1])
