"""Acceptance criteria 1-12, one pass/fail line each.

Run under pytest (lines are printed inline) or directly as a script.
"""
from __future__ import annotations

import time

import pytest

from tuttekit.verify import ACCEPTANCE


def _line(num, check, secs):
    return f"criterion {num:2d} {'PASS' if check.ok else 'FAIL'} ({secs:.1f}s) {check.name}: {check.detail}"


@pytest.mark.parametrize("num,fn", ACCEPTANCE, ids=[f"c{n:02d}" for n, _ in ACCEPTANCE])
def test_criterion(num, fn, capsys):
    t = time.perf_counter()
    check = fn()
    with capsys.disabled():
        print("\n" + _line(num, check, time.perf_counter() - t))
    assert check.ok, check.detail


if __name__ == "__main__":
    for num, fn in ACCEPTANCE:
        t = time.perf_counter()
        print(_line(num, fn(), time.perf_counter() - t), flush=True)
