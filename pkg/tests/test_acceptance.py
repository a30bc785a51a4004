"""Every advertised guarantee, exercised end to end at full scale.

One test per battery criterion, sharing a single context so expensive
builds and Monte Carlo grids are reused exactly as `geoshift battery`
would.  Run with ``pytest -v tests/test_acceptance.py`` to see one
pass/fail line per criterion (add ``-s`` for the printed checklist).
"""

import pytest

from geoshift.battery import (
    CRITERION_COUNT,
    PROFILES,
    BatteryContext,
    run_criterion,
)
from geoshift.battery import _NAMES  # criterion names, for readable test ids


@pytest.fixture(scope="module")
def ctx():
    return BatteryContext(seed=0, profile=PROFILES["full"])


@pytest.mark.parametrize(
    "index",
    range(1, CRITERION_COUNT + 1),
    ids=[f"{i:02d}-{_NAMES[i][0]}" for i in range(1, CRITERION_COUNT + 1)],
)
def test_criterion(index, ctx):
    res = run_criterion(index, ctx)
    status = "PASS" if res.passed else "FAIL"
    print(f"[{index:2d}] {status}  {res.name}: {res.check}")
    assert res.passed, res.details
