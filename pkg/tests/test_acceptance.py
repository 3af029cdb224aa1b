"""One test per acceptance criterion; each prints a PASS/FAIL line."""
from __future__ import annotations

import pytest

from homsplit.checks import CRITERIA

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"{c.number:02d}-{c.name}")
def test_criterion(criterion):
    outcome = criterion.evaluate(seeds=100)
    print(outcome.line())
    ACCEPTANCE_LINES.append(outcome.line())
    assert outcome.passed, outcome.detail


def test_selftest_exit_code(capsys):
    from homsplit.cli import main

    assert main(["selftest", "--seeds", "3"]) == 0
    out = capsys.readouterr().out
    assert "11 passed, 0 failed" in out
