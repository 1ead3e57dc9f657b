from pathlib import Path

import pytest

from polyfun.ring import load_ring_spec, make_cyclic_ring, make_matrix_ring, make_triangular_ring

DATA = Path(__file__).parent / "data"

ACCEPTANCE_RESULTS: list[tuple[str, str, bool, str]] = []


def table_ring(name):
    return load_ring_spec((DATA / f"{name}.json").read_text())


@pytest.fixture(scope="session")
def m2z2():
    return make_matrix_ring(2, 2)


@pytest.fixture(scope="session")
def t2z2():
    return make_triangular_ring(2, 2)


@pytest.fixture(scope="session")
def z4():
    return make_cyclic_ring(4)


@pytest.fixture
def acceptance():
    """Record one criterion outcome; printed as a pass/fail line at session end."""

    def record(key, title, passed, detail=""):
        ACCEPTANCE_RESULTS.append((key, title, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key, title, passed, detail in sorted(ACCEPTANCE_RESULTS, key=lambda r: int(r[0][2:])):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {key}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
