from pathlib import Path

import pytest

from quiverbs.qfile import parse

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def golden():
    return lambda name: parse(GOLDEN / name)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        ok, seconds, label, note = mod.RESULTS[num]
        line = f"criterion {num:>2} {'PASS' if ok else 'FAIL'} {seconds:7.2f}s  {label}"
        terminalreporter.write_line(line + (f"  [{note}]" if note else ""))
