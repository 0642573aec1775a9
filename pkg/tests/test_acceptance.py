"""Acceptance criteria, each at its stated tolerance and runtime budget.

Every test records one PASS/FAIL line, printed in the terminal summary.
"""
import time

import pytest

from sostree import k2, verify


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    ok, detail = fn(*args, **kw)
    return ok, detail, time.perf_counter() - t0


# The printed value 0.5773 of 1/sqrt(3) = 0.57735027 is truncated, so it sits
# 5.03e-5 away and cannot meet a 5e-5 tolerance. Reported honestly as a failure.
@pytest.mark.xfail(strict=True, reason="1/sqrt(3) is 5.03e-5 from its printed 0.5773")
def test_1_threshold_constants(acceptance):
    ok, detail, _ = timed(verify.check_constants, tol=5e-5)
    acceptance("1 threshold constants (5e-5)", ok, detail)
    assert ok, detail


def test_2_critical_field_identity(acceptance):
    ok, detail, dt = timed(verify.check_critical_field_identity, n=200, rtol=1e-10)
    ok = ok and dt < 1.0
    acceptance("2 critical fields equal lambda1, lambda2", ok, f"{detail}, {dt:.2f}s")
    assert ok, detail


def test_3_classifier_matches_oracle(acceptance):
    ok, detail, dt = timed(verify.check_oracle_grid, 100, 100)
    ok = ok and dt < 30.0
    acceptance("3 classifier vs Sturm oracle", ok, f"{detail}, {dt:.1f}s")
    assert ok, detail


def test_4_residuals(acceptance):
    ok, detail, dt = timed(verify.check_residuals_grid, 100, 100)
    acceptance("4 residuals < 1e-10", ok, f"{detail}, {dt:.1f}s")
    assert ok, detail


def test_5_compatibility(acceptance):
    points = verify.case_representatives()
    assert len({label for label, _, _ in points}) == len(k2.REGION_COUNTS)
    ok, detail, dt = timed(verify.check_compat_samples, radii=(0, 1), points=points, tol=1e-10)
    ok = ok and dt < 10.0
    acceptance("5 compatibility of every fixed point", ok, f"{detail}, {dt:.1f}s")
    assert ok, detail


def test_6_uniqueness(acceptance):
    ok, detail, _ = timed(verify.check_uniqueness, n=100, seed=0)
    acceptance("6 uniqueness regimes", ok, detail)
    assert ok, detail


def test_7_seven_measures(acceptance):
    counts = {p: k2.classify(*p).tisgm_count for p in [(0.1, 1.0), (0.2, 0.75)]}
    triple = k2.cubic_branch(k2.THETA2, k2.LAMBDA_TILDE)
    sweep_ok, sweep_detail = verify.check_sweep_grid(50, 50)
    ok = all(c == 7 for c in counts.values()) and len(triple) == 1 and triple[0].multiplicity == 3 and sweep_ok
    detail = (f"counts {counts}; cubic at (theta2, lambda~) gives {[(s.y, s.multiplicity) for s in triple]}; "
              f"sweep {sweep_detail}")
    acceptance("7 seven-measure regime and sweep slices", ok, detail)
    assert ok, detail


def test_8_boundary_cases(acceptance):
    bad = []
    for t in (0.05, 0.15, 0.235):
        res = k2.classify(t, k2.lambda_curves(t).lambda1)
        doubles = [s for s in res.solutions if s.branch == "cubic" and s.multiplicity == 2]
        if res.tisgm_count != 4 or len(doubles) != 1:
            bad.append(("lambda1", t, res.tisgm_count))
    for t in (0.05, 0.15, 0.22):
        res = k2.classify(t, k2.lambda_curves(t).lambda2)
        if res.tisgm_count != 6:
            bad.append(("lambda2", t, res.tisgm_count))
    for t in (0.1, 0.2, 0.3):
        lam = k2.lambda_curves(t).lambda3
        res = k2.classify(t, lam)
        xi = (1 - 3 * t ** 2) / (2 * t ** 2)
        quartic = [s for s in res.solutions if s.index in (6, 7)]
        collapsed = len(k2.quartic_branch(t, lam)) == 2 and all(
            abs(s.x + 1 / s.x - xi) < 1e-9 * xi for s in quartic)
        if res.tisgm_count != 3 or not collapsed:
            bad.append(("lambda3", t, res.tisgm_count))
    ok = not bad
    acceptance("8 boundary cases on lambda1, lambda2, lambda3", ok, f"9 points, {len(bad)} failures {bad}")
    assert ok
