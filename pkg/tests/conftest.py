from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qdisc.scalar import QScalar, qpow

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_coeffs = st.lists(st.integers(-5, 5), min_size=1, max_size=4)


@st.composite
def scalars(draw, nonzero=False):
    """Random elements of Q(q^1/2) built from small integer polynomials."""
    t = qpow(Fraction(1, 2))
    num = sum((c * t**i for i, c in enumerate(draw(_coeffs))), QScalar(0))
    den_list = draw(_coeffs.filter(lambda xs: any(xs)))
    den = sum((c * t**i for i, c in enumerate(den_list)), QScalar(0))
    shift = draw(st.integers(-3, 3))
    out = num / den * t**shift
    if nonzero and not out:
        out = QScalar(1)
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_lines():
    return ACCEPTANCE_LINES
