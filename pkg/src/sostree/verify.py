"""Cross-checks between the analytic classifier and independent oracles.

Every check returns a :class:`CheckResult`; ``run_suite`` bundles them into
the quick and full levels used by ``sostree verify``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import general, k2, poly
from .compat import check_compatibility, equivalence_probe, partition_ratio
from .model import BoundaryLaw, ModelParams

CURVE_EXCLUSION_RTOL = 1e-6
RESIDUAL_TOL = 1e-10


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


def _timed(name, fn, *args, **kw) -> CheckResult:
    t0 = time.perf_counter()
    try:
        passed, detail = fn(*args, **kw)
    except Exception as exc:  # a crashing check is a failed check
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, bool(passed), detail, time.perf_counter() - t0)


# -- oracle -------------------------------------------------------------------

def sturm_oracle_count(theta: float, lam: float) -> int:
    """Fixed-point count from raw polynomial root counting.

    Positive roots of the x = 1 cubic in y, plus positive roots of the
    quartic in x for which theta y^2 = (1-theta^2) x - theta^2 (x^2+1) has a
    positive right-hand side.  A quartic root at x = 1 duplicates a cubic root
    and is not counted.
    """
    zeta = math.sqrt(lam)
    t = theta
    cubic = [-2.0 * zeta * t, t * t + 1.0, -zeta, t]
    n = poly.sturm_positive_count(cubic)
    c1 = t * (3.0 * t * t - 1.0)
    quartic = [t ** 3, c1, 4.0 * t ** 3 + lam - 2.0 * t, c1, t ** 3]
    for x in poly.isolate_and_refine(quartic, tol=1e-9).roots:
        if abs(x - 1.0) < 1e-6:
            continue
        if (1.0 - t * t) * x - t * t * (x * x + 1.0) > 0.0:
            n += 1
    return n


def acceptance_grid(n_theta: int = 100, n_lambda: int = 100):
    thetas = [1.2 * i / n_theta for i in range(1, n_theta + 1)]
    lams = [2.0 * j / n_lambda for j in range(1, n_lambda + 1)]
    return thetas, lams


def near_boundary(theta: float, lam: float, rtol: float = CURVE_EXCLUSION_RTOL) -> bool:
    for t in (k2.THETA2, k2.THETA3, k2.THETA_C_PRIME):
        if abs(theta - t) <= rtol * t:
            return True
    cur = k2.lambda_curves(theta)
    for c in (cur.lambda1, cur.lambda2, cur.lambda3, cur.lambda4):
        if c is not None and c > 0 and abs(lam - c) <= rtol * c:
            return True
    return False


def case_representatives() -> list[tuple[str, float, float]]:
    """One (label, theta, lambda) per case of the k = 2 characterisation."""
    out = []

    def mid(a, b):
        return 0.5 * (a + b)

    c = k2.lambda_curves(0.15)
    out += [("1(a)", 0.15, mid(c.lambda4, c.lambda2)), ("1(b)", 0.15, c.lambda2),
            ("1(c)", 0.15, mid(c.lambda1, c.lambda4)), ("1(d)", 0.15, mid(c.lambda2, c.lambda3)),
            ("1(e)", 0.15, c.lambda1), ("1(f)", 0.15, 0.5 * c.lambda1), ("1(g)", 0.15, 1.5 * c.lambda3)]
    t4 = k2.THETA4
    c = k2.lambda_curves(t4)
    out += [("2(a)", t4, mid(c.lambda1, c.lambda2)), ("2(b)", t4, mid(c.lambda2, c.lambda3)),
            ("2(c)", t4, c.lambda1), ("2(d)", t4, 0.5 * c.lambda1), ("2(e)", t4, 1.5 * c.lambda3)]
    c = k2.lambda_curves(0.236)
    out += [("3(a)", 0.236, mid(c.lambda1, c.lambda2)), ("3(b)", 0.236, mid(c.lambda4, c.lambda3)),
            ("3(c)", 0.236, c.lambda2), ("3(d)", 0.236, mid(c.lambda2, c.lambda4)),
            ("3(e)", 0.236, 1.5 * c.lambda3)]
    c = k2.lambda_curves(0.3)
    out += [("4(a)", 0.3, mid(c.lambda4, c.lambda3)), ("4(b)", 0.3, 0.5 * c.lambda4),
            ("4(c)", 0.3, 1.5 * c.lambda3)]
    c = k2.lambda_curves(0.45)
    out += [("5(a)", 0.45, 0.5 * c.lambda4), ("5(b)", 0.45, 1.5 * c.lambda3)]
    out += [("6", 0.8, 2.0)]
    return out


def case_family(theta: float) -> str:
    """Leading digit of the case labels possible at this theta."""
    t, _ = k2._snap_theta(theta, k2.DEFAULT_TOL)
    if t >= k2.THETA_C_PRIME:
        return "6"
    if t < k2.THETA4:
        return "1"
    if t == k2.THETA4:
        return "2"
    if t < k2.THETA2:
        return "3"
    return "4" if t < k2.THETA3 else "5"


def allowed_counts(theta: float) -> set[int]:
    fam = case_family(theta)
    return {n for label, n in k2.REGION_COUNTS.items() if label.split("(")[0] == fam}


def check_sweep_slices(rows) -> tuple[bool, str]:
    """Counts seen in each theta slice of a sweep must be ones its case list permits."""
    seen: dict[float, set[int]] = {}
    for t, _, _, count, _ in rows:
        seen.setdefault(float(t), set()).add(int(count))
    bad = [(t, sorted(c)) for t, c in seen.items() if not c <= allowed_counts(t)]
    return not bad, f"{len(seen)} slices, {len(bad)} with foreign counts" + (f"; {bad[:3]}" if bad else "")


def check_sweep_grid(n_theta: int = 50, n_lambda: int = 50, theta=(0.05, 0.6), lam=(0.1, 1.5)):
    rows = []
    for t in np.linspace(*theta, n_theta):
        for v in np.linspace(*lam, n_lambda):
            res = k2.classify(float(t), float(v))
            rows.append((float(t), float(v), res.region, res.tisgm_count, res.boundary_flag))
    return check_sweep_slices(rows)


# -- individual checks -------------------------------------------------------------

PRINTED_CONSTANTS = {
    "theta2": (k2.THETA2, 0.2425),
    "theta3": (k2.THETA3, 0.3780),
    "theta4": (k2.THETA4, 0.2294),
    "theta_c_prime": (k2.THETA_C_PRIME, 0.5773),
    "lambda_tilde": (k2.LAMBDA_TILDE, 0.7704),
    "lambda3(theta3)": (k2.lambda_curves(k2.THETA3).lambda3, 0.8639),
    "theta1": (k2.THETA1, 0.7486),
}


def check_constants(tol: float = 1e-4):
    # the printed decimals are truncated, not rounded, so one unit of the last
    # digit is the natural tolerance
    bad = {k: v for k, (v, printed) in PRINTED_CONSTANTS.items() if abs(v - printed) > tol}
    return not bad, f"{len(PRINTED_CONSTANTS) - len(bad)}/{len(PRINTED_CONSTANTS)} within {tol:g}" + (f"; off: {bad}" if bad else "")


def check_critical_field_identity(n: int = 200, rtol: float = 1e-10):
    thetas = np.linspace(0.01, k2.THETA2, n + 2)[1:-1]
    worst = 0.0
    for t in thetas:
        s1, s2 = general.lambda_star(float(t), 2)
        c = k2.lambda_curves(float(t))
        worst = max(worst, abs(s1 - c.lambda1) / c.lambda1, abs(s2 - c.lambda2) / c.lambda2)
    return worst <= rtol, f"{n} thetas, max rel diff {worst:.2e} (tol {rtol:g})"


def check_oracle_grid(n_theta: int = 100, n_lambda: int = 100):
    thetas, lams = acceptance_grid(n_theta, n_lambda)
    mismatches = []
    checked = 0
    for t in thetas:
        for lam in lams:
            if near_boundary(t, lam):
                continue
            checked += 1
            cnt, _ = k2.count_tisgm(t, lam)
            cls = k2.classify(t, lam)
            orc = sturm_oracle_count(t, lam)
            if not cnt == cls.tisgm_count == orc:
                mismatches.append((t, lam, cnt, cls.tisgm_count, orc))
    detail = f"{checked} points, {len(mismatches)} mismatches"
    if mismatches:
        detail += f"; first {mismatches[:3]}"
    return not mismatches, detail


def check_residuals_grid(n_theta: int = 100, n_lambda: int = 100, ks=(2, 3, 4)):
    thetas, lams = acceptance_grid(n_theta, n_lambda)
    worst = 0.0
    where = None
    n_sol = 0
    for t in thetas:
        for lam in lams:
            for s in k2.solutions(t, lam):
                n_sol += 1
                r = max(abs(v) for v in s.residuals)
                if r > worst:
                    worst, where = r, (t, lam, "k2", s.index)
            for k in ks:
                for root in general.solve_z0eq1_branch(t, lam, k):
                    n_sol += 1
                    r = max(abs(v) for v in general.log_residuals(1.0, root.z1, t, lam, k))
                    if r > worst:
                        worst, where = r, (t, lam, k)
    return worst < RESIDUAL_TOL, f"{n_sol} solutions, max residual {worst:.2e} at {where}"


def check_compat_samples(radii=(0, 1), points=None, tol: float = 1e-10):
    points = points if points is not None else case_representatives()
    worst = 0.0
    n = 0
    for _, t, lam in points:
        params = ModelParams.three_state(t, lam)
        for s in k2.solutions(t, lam):
            law = BoundaryLaw((s.z0, s.z1))
            for r in radii:
                worst = max(worst, check_compatibility(params, law, r).max_abs_discrepancy)
                n += 1
    return worst < tol, f"{len(points)} points, {n} checks, max discrepancy {worst:.2e}"


def check_partition_identity(points=None, rtol: float = 1e-12):
    points = points if points is not None else case_representatives()[:6]
    worst = 0.0
    for _, t, lam in points:
        params = ModelParams.three_state(t, lam)
        for s in k2.solutions(t, lam):
            for r in (0, 1):
                worst = max(worst, abs(partition_ratio(params, BoundaryLaw((s.z0, s.z1)), r) - 1.0))
    return worst < rtol, f"max |Z_(n+1)/(A_n Z_n) - 1| = {worst:.2e}"


def check_uniqueness(n: int = 100, seed: int = 0):
    rng = np.random.default_rng(seed)
    bad = []
    for _ in range(n):
        t = float(rng.uniform(1.0, 5.0))
        lam = float(np.exp(rng.uniform(math.log(0.1), math.log(10.0))))
        for k in (2, 3, 4):
            roots = general.solve_z0eq1_branch(t, lam, k)
            if len(roots) != 1:
                bad.append(("theta>=1", t, lam, k, len(roots)))
        if k2.classify(t, lam).tisgm_count != 1:
            bad.append(("k2", t, lam))
    for _ in range(n):
        t = float(rng.uniform(k2.THETA_C_PRIME, 3.0))
        lam = float(np.exp(rng.uniform(math.log(0.01), math.log(100.0))))
        if k2.classify(t, lam).tisgm_count != 1:
            bad.append(("above-theta-c-prime", t, lam))
    return not bad, f"{2 * n} samples, {len(bad)} exceptions" + (f"; {bad[:3]}" if bad else "")


def check_root_count_random(n: int = 10_000, seed: int = 1):
    rng = np.random.default_rng(seed)
    bad = []
    checked = 0
    for _ in range(n):
        k = int(rng.integers(2, 5))
        t = float(rng.uniform(0.01, 1.5))
        lam = float(np.exp(rng.uniform(math.log(0.01), math.log(10.0))))
        if t < general.theta_c(k):
            l1, l2 = general.lambda_star(t, k)
            if min(abs(lam - l1), abs(lam - l2)) <= 1e-6:
                continue
        checked += 1
        ab = general.ab_transform(t, lam, k)
        expected = general.lemma1_count(ab.a, ab.b, k).count
        got = len(general.solve_z0eq1_branch(t, lam, k))
        if expected != got:
            bad.append((t, lam, k, expected, got))
    return not bad, f"{checked} samples, {len(bad)} mismatches" + (f"; {bad[:3]}" if bad else "")


def check_equivalence_probe(trials: int = 100):
    p = equivalence_probe(ModelParams.three_state(0.4, 1.5), trials, 1)
    q = equivalence_probe(ModelParams.three_state(0.2, 0.75), 0, 1)
    ok = p.passed and p.random_rejected == trials and q.passed and q.fixed_points == 7
    return ok, f"random rejected {p.random_rejected}/{trials}; fixed points passing {q.fixed_points}/7"


def run_suite(level: str = "quick") -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    full = level == "full"
    checks = [
        ("constants", check_constants, {}),
        ("critical-field-identity", check_critical_field_identity, {"n": 200 if full else 50}),
        ("classifier-vs-oracle", check_oracle_grid,
         {"n_theta": 100, "n_lambda": 100} if full else {"n_theta": 30, "n_lambda": 30}),
        ("residuals", check_residuals_grid,
         {"n_theta": 100, "n_lambda": 100} if full else {"n_theta": 20, "n_lambda": 20}),
        ("compatibility", check_compat_samples, {} if full else {"points": case_representatives()[::4]}),
        ("partition-identity", check_partition_identity, {}),
        ("uniqueness", check_uniqueness, {"n": 100 if full else 20}),
        ("sweep-slices", check_sweep_grid, {} if full else {"n_theta": 20, "n_lambda": 20}),
    ]
    if full:
        checks += [
            ("root-count", check_root_count_random, {}),
            ("equivalence-probe", check_equivalence_probe, {}),
        ]
    return [_timed(name, fn, **kw) for name, fn, kw in checks]
