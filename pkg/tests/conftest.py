import pytest

from eiscurve import parse_character
from eiscurve.overconvergent import l_invariants

TEST_POINTS = [("kronecker:-4", 5), ("kronecker:-3", 7), ("kronecker:-3", 13)]

# criterion -> list of (label, passed); filled by tests/test_acceptance.py
ACCEPTANCE: dict[str, list[tuple[str, bool]]] = {}


def record(criterion: str, label: str, passed: bool) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((label, bool(passed)))


@pytest.fixture(scope="session")
def chi4():
    return parse_character("kronecker:-4")


@pytest.fixture(scope="session")
def chi3():
    return parse_character("kronecker:-3")


@pytest.fixture(scope="session")
def linv_chi4_5(chi4):
    return l_invariants(chi4, 5, 30)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE, key=int):
        rows = ACCEPTANCE[crit]
        ok = all(passed for _, passed in rows)
        bad = [label for label, passed in rows if not passed]
        line = f"criterion {crit}: {'PASS' if ok else 'FAIL'} ({len(rows)} runs)"
        if bad:
            line += " failing: " + ", ".join(bad)
        terminalreporter.write_line(line)
