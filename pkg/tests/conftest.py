import time
from contextlib import contextmanager

import pytest

_RESULTS = []


@contextmanager
def _timed(number, title, limit):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        _RESULTS.append((number, title, False, time.perf_counter() - start, limit, repr(exc)[:200]))
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit
    _RESULTS.append((number, title, ok, elapsed, limit, "" if ok else "over time limit"))
    assert ok, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


@pytest.fixture
def criterion():
    """``with criterion(n, title, seconds): ...`` records one pass/fail line."""
    return _timed


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, elapsed, limit, why in sorted(_RESULTS):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s, limit {limit}s)"
        if why:
            line += f"  {why}"
        terminalreporter.write_line(line)
