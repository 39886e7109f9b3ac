"""The ten acceptance criteria; each prints one PASS/FAIL line."""
from __future__ import annotations

import time

import pytest

from logtan.acceptance import CRITERIA, DEFAULT_SEED


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    start = time.perf_counter()
    result = CRITERIA[number](DEFAULT_SEED)
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        print(f"\n{result.line()}  ({elapsed:.1f}s)")
    assert result.passed, result.detail
