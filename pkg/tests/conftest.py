import time

import pytest

_LINES = pytest.StashKey[list]()


class Criterion:
    """Context manager that records one PASS/FAIL line for an acceptance criterion."""

    def __init__(self, lines, number, title):
        self.lines = lines
        self.number = number
        self.title = title
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def elapsed(self) -> float:
        return time.perf_counter() - self.start

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        detail = self.detail if exc_type is None else f"{exc_type.__name__}: {exc}".splitlines()[0]
        line = f"criterion {self.number:2d} [{status}] {self.title}: {detail} ({self.elapsed():.2f}s)"
        self.lines.append((self.number, line))
        print(line)
        return False


@pytest.fixture
def criterion(request):
    lines = request.config.stash.setdefault(_LINES, [])
    return lambda number, title: Criterion(lines, number, title)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
