import time

import numpy as np
import pytest

from tripod_xpm.model import Drives, TripodParams

ACCEPTANCE = pytest.StashKey[list]()
STARTED = pytest.StashKey[float]()
FULL_SUITE_LIMIT = 60.0


def pytest_sessionstart(session):
    session.config.stash[STARTED] = time.perf_counter()
    session.config.stash[ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if not lines:
        return
    elapsed = time.perf_counter() - config.stash[STARTED]
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines):
        terminalreporter.write_line(line[1])
    verdict = "PASS" if elapsed < FULL_SUITE_LIMIT else "FAIL"
    terminalreporter.write_line(f"{verdict} criterion 8 runtime: full session {elapsed:.1f} s (limit {FULL_SUITE_LIMIT:.0f} s)")


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion."""

    def record(number, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        print(line)
        request.config.stash[ACCEPTANCE].append((str(number), line))
        return ok

    return record


@pytest.fixture
def params():
    return TripodParams()


@pytest.fixture
def weak_drives():
    return Drives.make(probe=(4.0, 0.0), coupling=(70.0, 0.0), trigger=(4.0, 0.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
