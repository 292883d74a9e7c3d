import itertools

import numpy as np
import pytest

from lsqcipher.automaton import KeyAutomaton
from lsqcipher.latin import generate_latin, validate_latin


def cyclic_table(n):
    """The Z_n table: entry [x][a] = (x + a) mod n."""
    return [[(x + a) % n for a in range(n)] for x in range(n)]


def cyclic_automaton(n):
    return KeyAutomaton.from_table(cyclic_table(n))


def random_automaton(n, seed=b"test-key"):
    sq = generate_latin(n, seed)
    return KeyAutomaton(sq.order, sq)


def all_words(alphabet, max_len):
    """Every word over range(alphabet) of length 1..max_len."""
    for length in range(1, max_len + 1):
        yield from itertools.product(range(alphabet), repeat=length)


@pytest.fixture
def z3():
    return cyclic_automaton(3)


@pytest.fixture
def z3_q(z3):
    return z3.quasigroup()


@pytest.fixture(scope="session")
def key256():
    return random_automaton(256)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
