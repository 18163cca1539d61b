import pytest

from parasasaki.fixtures import builtin_spec
from parasasaki.workbench import Workbench


@pytest.fixture(scope="session")
def ex1():
    return Workbench(builtin_spec("example1").build())


@pytest.fixture(scope="session")
def ex2():
    return Workbench(builtin_spec("example2").build())


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        title, ok, failed, note = RESULTS[n]
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}"
        if note:
            line += f"  ({note})"
        terminalreporter.write_line(line)
        for label in failed:
            terminalreporter.write_line(f"    failed: {label}")
