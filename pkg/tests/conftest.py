import random

import pytest

from ssid.arith import FieldSpec, construct_field, smallest_quadratic_extension


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def F11():
    return FieldSpec(11)


@pytest.fixture
def F49():
    # t^2 = 3; 3 is a non-residue mod 7
    return construct_field(7, 3)


@pytest.fixture
def F121():
    return smallest_quadratic_extension(11)


_CRITERIA = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion for the summary."""

    def record(n, ok, detail):
        _CRITERIA[n] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 9):
        ok, detail = _CRITERIA.get(n, (False, "not run"))
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
