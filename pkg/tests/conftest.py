import random
from fractions import Fraction
from itertools import combinations
from math import prod

import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def brute_elementary(roots):
    """Subset enumeration, used only as an oracle."""
    d = len(roots)
    return tuple(sum((prod(c) for c in combinations(roots, i)), Fraction(0))
                 for i in range(d + 1))


def rational_roots(rng, d, q=None, allow_zero=True):
    q = q or rng.randint(1, 5)
    lo = 0 if allow_zero else 1
    return [Fraction(rng.randint(lo, 9), q) for _ in range(d)]


@pytest.fixture
def rng():
    return random.Random(20240611)


def root_lists(min_size=1, max_size=8, allow_zero=True):
    lo = 0 if allow_zero else 1
    atom = st.builds(Fraction, st.integers(lo, 9), st.integers(1, 5))
    return st.lists(atom, min_size=min_size, max_size=max_size)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
