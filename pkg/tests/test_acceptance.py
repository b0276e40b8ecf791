"""One test per acceptance criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines. Set
``QWB_QUICK=1`` for the reduced sweeps.
"""

import os

import pytest

from qwbrauer.selftest import CRITERIA, run

QUICK = os.environ.get("QWB_QUICK") == "1"

# criteria that cannot pass as stated; the reason is recorded in the decisions ledger
KNOWN_RED = {
    "11b": "rect_hom_coeff vanishes at rho^2 = q^(-2m), while the stated locus is rho^2 = q^(2m)",
}

BUDGET = {"1": 1.0, "2": 120.0, "4": 30.0}


def _cases():
    for key, title, _ in CRITERIA:
        marks = [pytest.mark.xfail(strict=True, reason=KNOWN_RED[key])] if key in KNOWN_RED else []
        yield pytest.param(key, title, id=f"criterion-{key}", marks=marks)


@pytest.mark.parametrize("key,title", list(_cases()))
def test_criterion(key, title):
    res = run(key, quick=QUICK)
    print(f"\n{'PASS' if res.ok else 'FAIL'} {key} {title}: {res.detail} ({res.seconds:.2f}s)")
    assert res.ok, res.failures[:5]
    if key in BUDGET:
        assert res.seconds < BUDGET[key]
