import os

import pytest

from repstable.fields import QQ
from repstable.presentation import parse_presentation
from repstable.repetitive import build_repetitive_window

A2_TEXT = "vertices 1 2\narrow a : 1 -> 2\n"
A3_TEXT = "vertices 1 2 3\narrow a : 1 -> 2\narrow b : 2 -> 3\nzero a b\n"
LOOP_TEXT = "vertices 1\narrow l : 1 -> 1\nzero l l\nnilpotent 10\n"
POINT_TEXT = "vertices 1\n"

EXAMPLE4_PATH = os.path.join(os.path.dirname(__file__), "..",
                             "src", "repstable", "data", "example4.quiver")


@pytest.fixture(scope="session")
def a2():
    return parse_presentation(A2_TEXT)


@pytest.fixture(scope="session")
def a3():
    return parse_presentation(A3_TEXT)


@pytest.fixture(scope="session")
def loop():
    return parse_presentation(LOOP_TEXT)


@pytest.fixture(scope="session")
def point():
    return parse_presentation(POINT_TEXT)


@pytest.fixture(scope="session")
def ex4():
    with open(EXAMPLE4_PATH) as fh:
        return parse_presentation(fh.read())


@pytest.fixture(scope="session")
def a2_win(a2):
    return build_repetitive_window(a2, 0, 3)


@pytest.fixture(scope="session")
def a3_win(a3):
    return build_repetitive_window(a3, 0, 3)


@pytest.fixture(scope="session")
def loop_win(loop):
    return build_repetitive_window(loop, 0, 3)


@pytest.fixture(scope="session")
def ex4_win(ex4):
    return build_repetitive_window(ex4, -3, 5)


@pytest.fixture(scope="session")
def field():
    return QQ
