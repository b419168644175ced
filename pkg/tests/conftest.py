import re

import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """Record the verdict of one acceptance criterion and echo it."""
    def record(number, ok, detail):
        line = f"criterion {str(number):>3}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE[str(number)] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE, key=lambda k: (int(re.match(r"\d+", k)[0]), k)):
            terminalreporter.write_line(ACCEPTANCE[number])
