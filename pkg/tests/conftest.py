import random
import sys

import pytest

from knotproj.core import parse_word, realize_gauss_code
from knotproj.families import catalog, enumerate_projections


def curve(word):
    return realize_gauss_code(parse_word(word))


@pytest.fixture(scope="session")
def corpus6():
    return enumerate_projections(6)


@pytest.fixture(scope="session")
def corpus5():
    return enumerate_projections(5)


@pytest.fixture
def trefoil():
    return catalog("3_1")


@pytest.fixture
def infinity():
    return catalog("inf")


def random_double_occurrence(rng: random.Random, c: int):
    word = [k for k in range(1, c + 1) for _ in range(2)]
    rng.shuffle(word)
    return word


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS, key=lambda k: int(k[2:])):
        terminalreporter.write_line(mod.RESULTS[key])
