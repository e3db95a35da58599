import time
from contextlib import contextmanager

import pytest

_RESULTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS] = []


@pytest.fixture
def criterion(request):
    """Context manager that records one PASS/FAIL line per acceptance criterion."""
    results = request.config.stash[_RESULTS]

    @contextmanager
    def check(number, text):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            line = f"FAIL  criterion {number:>2}: {text} ({type(exc).__name__}: {exc})"
            results.append(line)
            print(line)
            raise
        line = f"PASS  criterion {number:>2}: {text} [{time.perf_counter() - t0:.2f}s]"
        results.append(line)
        print(line)

    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_RESULTS, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
