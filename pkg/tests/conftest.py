import sys

import pytest
from mpmath import mp

from sixvertex.precision import DEFAULT_PRECISION
from sixvertex.weights import FerroParams


@pytest.fixture(autouse=True)
def _precision():
    saved = mp.prec
    mp.prec = DEFAULT_PRECISION
    yield
    mp.prec = saved


@pytest.fixture
def ref():
    return FerroParams.ref()


@pytest.fixture
def ref_exact():
    return FerroParams.ref(exact=True)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for name, mod in list(sys.modules.items()):
        if name.endswith("test_acceptance"):
            lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda x: int(x.split()[2].rstrip(':'))):
            terminalreporter.write_line(line)
