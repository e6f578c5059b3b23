import pytest

from schemadet.automata import make_nfa
from schemadet.queries import one_x_dfa, one_x_sha

# Outcome lines recorded by test_acceptance, echoed in the terminal summary.
ACCEPTANCE_LINES: dict = {}


def a0_automaton():
    """Three states named 2, 3, 4; recognizes (x + empty)(x a)*."""
    return make_nfa(["a", "x"], 3, [0, 2], [0],
                    [(0, "x", 1), (1, "a", 0), (2, "x", 0), (2, "x", 1)],
                    names=("2", "3", "4"))


def clean_not_perfect():
    """A DFA that is clean for one-x yet accepts x a x a, which has two x."""
    return make_nfa(["a", "x"], 2, [0], [1], [(0, "a", 1), (0, "x", 0), (1, "x", 0)])


@pytest.fixture
def a0():
    return a0_automaton()


@pytest.fixture
def onex():
    return one_x_dfa(["a"])


@pytest.fixture
def onex_nw():
    return one_x_sha(["a"])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
