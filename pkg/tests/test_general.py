import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from sostree import general, k2, poly
from sostree.general import CurveUndefinedError

# Frozen from tests/oracles/generate_frozen.py: critical fields are the positive
# roots in a of the discriminant of a x (b+x)^k - (1+x)^k, computed in sympy.
CRITICAL_FIELDS = {
    (2, 0.2): (0.69657437415779592661, 0.80742562584220407339),
    (3, 0.1): (0.066144761961115377009, 3.9330552380388846230),
    (4, 0.05): (0.0011802447054949654858, 107.24075394398469058),
}
# positive roots of z (theta^2 + theta z + 1)^k - lambda (2 theta + z)^k, sympy nroots
BRANCH_ROOTS = {
    (3, 0.1, 1.0): (0.0088141198936845006057, 0.82427545108078388942, 970.00209373544800396),
    (3, 2.0, 5.0): (1.5943230442684217320,),
    (2, 0.5, 1.0): (1.6156168298049642507,),
}


def test_ab_transform_examples():
    ab = general.ab_transform(1.0, 1.0, 2)
    assert (ab.a, ab.b) == (2.0, 1.0)
    ab = general.ab_transform(0.2, 1.0, 2)
    assert ab.a == pytest.approx(0.016, rel=1e-14)
    assert ab.b == pytest.approx(13.0, rel=1e-14)
    assert general.ab_transform(0.2, 7.0, 4).b == ab.b


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 5.0), st.floats(0.01, 10.0), st.integers(2, 6))
def test_ab_round_trip(theta, lam, k):
    ab = general.ab_transform(theta, lam, k)
    assert ab.lam() == pytest.approx(lam, rel=1e-14)
    assert ab.x_from_z1(ab.z1_from_x(1.7)) == pytest.approx(1.7)


@pytest.mark.parametrize("args", [(0.0, 1.0, 2), (0.5, -1.0, 2), (0.5, 1.0, 1)])
def test_ab_transform_rejects(args):
    with pytest.raises(ValueError):
        general.ab_transform(*args)


def test_closed_form_count_below_b0():
    assert general.b0(2) == 9.0
    for a in (1e-4, 0.1, 10.0):
        r = general.lemma1_count(a, 9.0, 2)
        assert r.count == 1 and r.x1 is None


def test_closed_form_count_b16():
    r = general.lemma1_count(0.0155, 16.0, 2)
    x = sp.symbols("x")
    exact = sorted(sp.solve(x ** 2 - 13 * x + 16, x))
    assert r.x1 == pytest.approx(float(exact[0]), rel=1e-14)
    assert r.x2 == pytest.approx(float(exact[1]), rel=1e-14)
    assert r.x1 == pytest.approx((13 - math.sqrt(105)) / 2, rel=1e-14)
    assert r.a1 == pytest.approx(0.013588603046822595560, rel=1e-13)
    assert r.a2 == pytest.approx(0.017966572734427404440, rel=1e-13)
    assert r.D == pytest.approx(15 * 7, rel=1e-14)
    assert r.count == 3
    # an independent Sturm count of the cleared polynomial
    assert poly.sturm_positive_count(general.cleared_polynomial(0.0155, 16.0, 2)) == 3


def test_closed_form_count_boundary_flag():
    r = general.lemma1_count(1.0, 16.0, 2)
    edge = general.lemma1_count(r.a1, 16.0, 2)
    assert edge.count == 2 and edge.boundary


@settings(max_examples=300, deadline=None)
@given(st.floats(1e-4, 10.0), st.floats(0.5, 200.0), st.integers(2, 5))
def test_closed_form_count_invariants(a, b, k):
    r = general.lemma1_count(a, b, k)
    assert r.count in (1, 2, 3)
    if b > general.b0(k):
        assert 0 < r.x1 < r.x2
        assert 0 < r.a1 < r.a2
        assert r.D > 0
    else:
        assert r.count == 1


def test_theta_c_values():
    assert general.theta_c(2) == pytest.approx(1 / math.sqrt(17), rel=1e-15)
    assert general.theta_c(2) == pytest.approx(0.242536, abs=1e-6)
    assert general.theta_c(3) == pytest.approx(0.377964, abs=1e-6)
    for k in range(2, 9):
        t = general.theta_c(k)
        assert general.ab_transform(t, 1.0, k).b == pytest.approx(general.b0(k), rel=1e-14)
    with pytest.raises(ValueError):
        general.theta_c(1)


@pytest.mark.parametrize("key", list(CRITICAL_FIELDS))
def test_lambda_star_matches_discriminant_oracle(key):
    k, theta = key
    s1, s2 = general.lambda_star(theta, k)
    assert (s1, s2) == pytest.approx(CRITICAL_FIELDS[key], rel=1e-12)
    assert s1 < s2


def test_lambda_star_undefined_above_theta_c():
    with pytest.raises(CurveUndefinedError):
        general.lambda_star(0.3, 2)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 0.2425))
def test_lambda_star_equals_k2_curves(theta):
    s1, s2 = general.lambda_star(theta, 2)
    cur = k2.lambda_curves(theta)
    assert s1 == pytest.approx(cur.lambda1, rel=1e-10)
    assert s2 == pytest.approx(cur.lambda2, rel=1e-10)


# -- branch solver -----------------------------------------------------------------

def test_trivial_root():
    [r] = general.solve_z0eq1_branch(1.0, 1.0, 2)
    assert r.z1 == pytest.approx(1.0, rel=1e-14)
    assert r.z0 == 1.0


@pytest.mark.parametrize("key", list(BRANCH_ROOTS))
def test_branch_roots_match_oracle(key):
    k, theta, lam = key
    got = [r.z1 for r in general.solve_z0eq1_branch(theta, lam, k)]
    assert got == pytest.approx(list(BRANCH_ROOTS[key]), rel=1e-12)
    for z1 in got:
        assert abs(general.z0eq1_residual(z1, theta, lam, k)) < 1e-12 * max(1.0, z1)


def test_three_roots_at_small_theta():
    assert len(general.solve_z0eq1_branch(0.1, 1.0, 2)) == 3


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("which", [0, 1])
def test_double_root_on_critical_field(k, which):
    theta = 0.5 * general.theta_c(k)
    lam = general.lambda_star(theta, k)[which]
    roots = general.solve_z0eq1_branch(theta, lam, k)
    assert len(roots) == 2
    assert sorted(r.multiplicity for r in roots) == [1, 2]
    for r in roots:
        assert abs(general.log_residuals(1.0, r.z1, theta, lam, k)[1]) < 1e-10
    assert general.tisgm_lower_bound(theta, lam, k) == 2


def test_tiny_leading_coefficient_root_is_found():
    # unscaled, the leading coefficient of the cleared polynomial is 1e-13 of the largest
    theta, lam, k = 0.01659269836146539, 6.970857913922257, 4
    roots = general.solve_z0eq1_branch(theta, lam, k)
    ab = general.ab_transform(theta, lam, k)
    assert len(roots) == general.lemma1_count(ab.a, ab.b, k).count == 3
    assert roots[-1].z1 > 1e7


def test_root_count_matches_closed_form_on_random_samples():
    rng = np.random.default_rng(17)
    checked = 0
    for _ in range(10_000):
        k = int(rng.integers(2, 5))
        theta = float(rng.uniform(0.01, 1.5))
        lam = float(np.exp(rng.uniform(math.log(0.01), math.log(10.0))))
        if theta < general.theta_c(k):
            l1, l2 = general.lambda_star(theta, k)
            if min(abs(lam - l1), abs(lam - l2)) <= 1e-6:
                continue
        ab = general.ab_transform(theta, lam, k)
        assert len(general.solve_z0eq1_branch(theta, lam, k)) == general.lemma1_count(ab.a, ab.b, k).count
        checked += 1
    assert checked > 9900


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 3.0), st.floats(0.01, 10.0), st.integers(2, 5), st.floats(0.01, 100.0))
def test_z0_one_solves_first_equation(theta, lam, k, z1):
    r0, _ = general.full_system_residuals(1.0, z1, theta, lam, k)
    assert r0 == pytest.approx(0.0, abs=1e-13)


def test_z0_one_symbolically():
    t, z1, lam = sp.symbols("theta z1 lambda", positive=True)
    for k in range(2, 6):
        den = t ** 2 + t * z1 + 1
        assert sp.simplify(1 - ((1 + t * z1 + t ** 2) / den) ** k) == 0


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.01, 50.0), st.floats(0.01, 50.0), st.integers(2, 5))
def test_z0_factorization_identity(theta, z0, z1, k):
    lhs, rhs = general.z0_factorization(z0, z1, theta, k)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9 * max(1.0, abs(lhs)))


# -- uniqueness and bounds --------------------------------------------------------------

def test_prop2_region():
    assert general.prop2_region(1.5)
    assert general.prop2_region(1.0)
    assert not general.prop2_region(0.9)


def test_unique_root_for_theta_at_least_one():
    rng = np.random.default_rng(23)
    for _ in range(300):
        theta = float(rng.uniform(1.0, 6.0))
        lam = float(rng.uniform(0.1, 10.0))
        for k in (2, 3, 4):
            assert len(general.solve_z0eq1_branch(theta, lam, k)) == 1


def test_full_system_unique_at_theta_two():
    [r] = general.solve_z0eq1_branch(2.0, 5.0, 3)
    lhs, rhs = general.z0_factorization(1.0, r.z1, 2.0, 3)
    assert lhs == rhs == 0.0
    # for z0 != 1 the bracket is positive, so the first equation cannot hold
    for z0 in (0.3, 2.0, 7.0):
        lhs, rhs = general.z0_factorization(z0, r.z1, 2.0, 3)
        assert abs(lhs) > 0


@pytest.mark.parametrize("theta,lam,expected", [(0.5, 1.0, 1), (0.2, 0.75, 3), (0.2, 0.5, 1), (0.2, 0.9, 1)])
def test_lower_bound(theta, lam, expected):
    assert general.tisgm_lower_bound(theta, lam, 2) == expected


def test_lower_bound_on_curve():
    assert general.tisgm_lower_bound(0.2, general.lambda_star(0.2, 2)[0], 2) == 2
