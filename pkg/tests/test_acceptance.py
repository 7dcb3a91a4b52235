"""The twelve acceptance criteria, each at its own tolerance and time budget.

A summary section with one PASS/FAIL line per criterion is printed at the end
of the pytest run.
"""

import pytest

from qdisc.suites import CRITERIA, run_criterion


@pytest.mark.parametrize("crit", CRITERIA, ids=lambda c: f"criterion{c.number:02d}")
def test_criterion(crit, acceptance_lines):
    rep = run_criterion(crit)
    status = "PASS" if rep.passed else "FAIL"
    line = f"criterion {crit.number}: {status} {crit.title} ({rep.data['seconds']:.2f} s)"
    acceptance_lines.append(line)
    print(line)
    assert rep.checks, "criterion recorded no checks"
    assert rep.passed, str(rep)
