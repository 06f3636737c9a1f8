import random
from fractions import Fraction

import pytest

from freemeixner.fock import random_meixner_data

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def seeded_data(seed, count, dims=(1, 2, 3)):
    rng = random.Random(seed)
    return [random_meixner_data(rng, rng.choice(dims)) for _ in range(count)]


@pytest.fixture
def half():
    return Fraction(1, 2)
