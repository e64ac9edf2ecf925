import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from lexfst.dix import read_dix
from lexfst.synthetic import random_dictionary
from lexfst.transducer import compile_dictionary

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
MINI_DIX = FIXTURES / "asm-mini.dix"

random_dictionaries = st.integers(0, 2**32 - 1).map(lambda seed: random_dictionary(random.Random(seed)))


@pytest.fixture(scope="session")
def mini():
    return read_dix(MINI_DIX)


@pytest.fixture(scope="session")
def analyzer(mini):
    return compile_dictionary(mini, "lr", minimize=True)


@pytest.fixture(scope="session")
def generator(mini):
    return compile_dictionary(mini, "rl", minimize=True)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
