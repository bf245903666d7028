import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, title, elapsed = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f} s)")


@pytest.fixture
def record_criterion():
    def record(num, title, ok, elapsed):
        # a criterion split over several tests passes only if every part does
        if num in ACCEPTANCE:
            prev_ok, _, prev_t = ACCEPTANCE[num]
            ok, elapsed = prev_ok and ok, prev_t + elapsed
        ACCEPTANCE[num] = (ok, title, elapsed)
        print(f"criterion {num}: {'PASS' if ok else 'FAIL'} {title}")

    return record
