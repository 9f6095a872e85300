import sys
import warnings
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qaomoto import FIXTURES
from qaomoto.arrangement import load_arrangement
from qaomoto.chambers import auto_flag, decompose, enumerate_chambers
from qaomoto.qcomplex import assemble, read_degree_fixture


@pytest.fixture(scope="session")
def b3():
    return load_arrangement(FIXTURES / "deleted_b3.json")


@pytest.fixture(scope="session")
def b3_decomp(b3):
    return decompose(b3, enumerate_chambers(b3), auto_flag(b3))


@pytest.fixture(scope="session")
def b3_degrees(b3_decomp):
    return read_degree_fixture(FIXTURES / "deleted_b3_degrees.json", b3_decomp)


@pytest.fixture(scope="session")
def b3_qc(b3, b3_decomp, b3_degrees):
    return assemble(b3_decomp, b3.weights, b3_degrees)


@pytest.fixture(scope="session")
def three():
    return load_arrangement(FIXTURES / "three_lines.json")


@pytest.fixture(scope="session")
def three_decomp(three):
    return decompose(three, enumerate_chambers(three), auto_flag(three))


@pytest.fixture(scope="session")
def three_degrees(three_decomp):
    return read_degree_fixture(FIXTURES / "three_lines_degrees.json", three_decomp)


@pytest.fixture(autouse=True)
def _quiet_q1_warning():
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="q0=1")
        yield


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
