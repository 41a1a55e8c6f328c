"""Acceptance criteria; one PASS/FAIL line per criterion is printed (run with -s)."""

import pytest

from hyperdisc.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number):
    outcome = run_criterion(number)
    print(outcome.line())
    assert outcome.passed, outcome.line()
