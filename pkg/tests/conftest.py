import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from padyn.rational_map import MapParams

ACCEPTANCE = {}

BIG = 2**64


def rationals(bound=BIG):
    return st.builds(
        Fraction, st.integers(min_value=-bound, max_value=bound), st.integers(min_value=1, max_value=bound)
    )


nonzero_rationals = rationals().filter(lambda q: q != 0)
primes = st.sampled_from([2, 3, 5, 7, 11])


@pytest.fixture
def rng():
    return random.Random(20261019)


@pytest.fixture
def worked():
    """p = 2, a = 0, b = 1, c = 1: x0 = 1, alpha = 1, beta = 1/2."""
    return MapParams.of(2, 0, 1, 1)


def record(criterion: int, passed: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {k}: {detail}")
