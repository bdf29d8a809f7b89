import math

import pytest

from thermal_forces.casimir import SumControl
from thermal_forces.numerics import QuadratureSpec

MICRON = 1e-6


@pytest.fixture(scope="session")
def control():
    return SumControl()


@pytest.fixture(scope="session")
def loose_control():
    # for property tests where the assertion tolerance is far above 1e-7
    return SumControl(term_rel_tol=1e-9, quadrature=QuadratureSpec(rel_tol=1e-8))


def rel(a, b):
    return abs(a - b) / abs(b)


HALF_PI = 0.5 * math.pi


# (number, title, passed, detail) per acceptance criterion, filled by test_acceptance
ACCEPTANCE = []


def report(number, title, passed, detail):
    ACCEPTANCE.append((number, title, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {number:>2}. {title}: {detail}")
