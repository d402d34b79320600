"""Acceptance criteria, one test each.

Every test prints one PASS/FAIL line for its criterion followed by the
individual checks. A criterion passes only when every check in its suite is
within tolerance, including the literal comparisons flagged INFO by the
``verify`` command. Run directly (``python3 tests/test_acceptance.py``) for
the lines alone.
"""
import time

import pytest

from pdm_oscillator.verification import SUITES

CRITERIA = [
    (1, "spectrum vs finite-difference Morse oracle", "spectrum", 30.0),
    (2, "spot values", "spot", 30.0),
    (3, "orthonormality of psi_0..psi_5", "orthonormality", 5.0),
    (4, "SUSY intertwining", "susy", 10.0),
    (5, "shape invariance and deformed factorial", "shape", 1.0),
    (6, "ladder algebra and SU(1,1)", "ladder", 10.0),
    (7, "coherent-state eigenproperty and GUP", "coherent", 20.0),
    (8, "classical closed form vs RK4", "classical", 5.0),
    (9, "quasi-classical dynamics", "dynamics", 30.0),
    (10, "figure-data properties", "figures", 60.0),
]


def evaluate(number, title, suite, budget):
    t = time.perf_counter()
    checks = SUITES[suite]()
    elapsed = time.perf_counter() - t
    ok = all(c.passed for c in checks) and elapsed < budget
    head = (f"CRITERION {number:2d} {'PASS' if ok else 'FAIL'}  {title} "
            f"({elapsed:.2f} s, budget {budget:.0f} s)")
    body = ["    " + c.line() for c in checks]
    return ok, [head, *body]


@pytest.mark.parametrize("number,title,suite,budget", CRITERIA,
                         ids=[f"criterion_{c[0]:02d}_{c[2]}" for c in CRITERIA])
def test_criterion(number, title, suite, budget, acceptance_log):
    ok, lines = evaluate(number, title, suite, budget)
    acceptance_log.extend(lines)
    print("\n".join(lines))
    failed = [ln.strip() for ln in lines[1:] if "FAIL" in ln]
    assert ok, "\n".join([lines[0], *failed])


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    for _, lines in results:
        print("\n".join(lines))
    raise SystemExit(0 if all(ok for ok, _ in results) else 1)
