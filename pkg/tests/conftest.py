import pytest

from qdisc.quadrature import QuadConfig


@pytest.fixture(scope="session")
def coarse():
    """A cheap mesh for structural tests that do not need the default accuracy."""
    return QuadConfig(levels=4, angles=8, arc_points=64)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion; printed in the terminal summary."""

    def record(number: int, passed: bool, detail: str, elapsed: float, limit: float) -> bool:
        ok = bool(passed) and elapsed < limit
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"criterion {number:>2}: {status}  {detail}  [{elapsed:.1f}s < {limit:g}s]")
        print(ACCEPTANCE_LINES[-1])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
