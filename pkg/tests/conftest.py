import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wignerfriend.randomness import make_rng  # noqa: E402

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def rng():
    return make_rng(20240101)


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(name, ok, detail)``."""
    log = request.config.stash[_ACCEPTANCE_KEY]

    def record(name, ok, detail=""):
        log.append((name, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE_KEY, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in log:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))

