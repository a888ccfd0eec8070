"""Acceptance gate: every headline criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` for one line per
criterion, or ``curvlab verify`` for the same table from the CLI.
"""

import pytest

from curvlab.acceptance import CRITERIA


@pytest.mark.parametrize("criterion", CRITERIA, ids=[c.cid for c in CRITERIA])
def test_acceptance(criterion):
    result = criterion.run()
    line = (
        f"[{'PASS' if result.passed else 'FAIL'}] {result.cid} "
        f"{criterion.title} ({result.seconds:.2f}s): {result.detail}"
    )
    print(line)
    assert result.passed, line
