from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from hahnpst import ChainParameters

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def offset():
    """Strictly positive rational with small numerator and denominator."""
    return st.builds(Fraction, st.integers(1, 40), st.integers(1, 9))


@st.composite
def positive_params(draw, max_N=20, parity=None, symmetric=False):
    """ChainParameters inside the positivity domain."""
    N = draw(st.integers(1, max_N))
    if parity == "odd" and N % 2 == 0 or parity == "even" and N % 2 == 1:
        N = N + 1 if N < max_N else N - 1
    edge = -1 if N % 2 else N
    a = edge + draw(offset())
    b = a if symmetric else edge + draw(offset())
    return ChainParameters(N, a, b)


@pytest.fixture
def acceptance():
    def record(number: int, title: str, passed: bool, detail: str = ""):
        ACCEPTANCE_LINES.append(
            f"[{'PASS' if passed else 'FAIL'}] criterion {number:2d}: {title}" + (f" ({detail})" if detail else ""))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
