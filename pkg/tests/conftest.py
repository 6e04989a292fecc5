import pytest

from fdfalearn.automata import BuchiAutomaton, Dfa
from fdfalearn.fdfa import Fdfa
from fdfalearn.formats import parse_ba

TARGETS = {
    "a^w+b^w": "[0]\na,[0]->[1]\na,[1]->[1]\nb,[0]->[2]\nb,[2]->[2]\n[1]\n[2]\n",
    "(ab)^w": "[0]\na,[0]->[1]\nb,[1]->[0]\n[0]\n",
    "S*b^w": "[0]\na,[0]->[0]\nb,[0]->[0]\nb,[0]->[1]\nb,[1]->[1]\n[1]\n",
    "S^w": "[0]\na,[0]->[0]\nb,[0]->[0]\n[0]\n",
    "empty": "[0]\na,[0]->[0]\nb,[0]->[0]\n",
}


def target(name) -> BuchiAutomaton:
    return parse_ba(TARGETS[name])


def ends_in_a_fdfa() -> Fdfa:
    """One leading state; progress states ε (initial) and a (accepting)."""
    M = Dfa("ab", [{"a": 0, "b": 0}], 0, (), [()])
    A = Dfa("ab", [{"a": 1, "b": 1}, {"a": 1, "b": 0}], 0, [1], [(), ("a",)])
    return Fdfa(M, [A])


def a_bstar_fdfa() -> Fdfa:
    """One leading state; progress ε -a-> a, ε -b-> sink, a -b-> a, a -a-> sink."""
    M = Dfa("ab", [{"a": 0, "b": 0}], 0, (), [()])
    A = Dfa("ab", [{"a": 1, "b": 2}, {"a": 2, "b": 1}, {"a": 2, "b": 2}], 0, [1],
            [(), ("a",), ("b",)])
    return Fdfa(M, [A])


def refined_leading() -> Dfa:
    return Dfa("ab", [{"a": 1, "b": 0}, {"a": 1, "b": 1}], 0, (), [(), ("a",)])


@pytest.fixture
def ends_in_a():
    return ends_in_a_fdfa()


# criterion number -> PASS/FAIL line, filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.write_sep("-", "acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
