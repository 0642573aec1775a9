"""Complete translation-invariant fixed-point set for k = 2, m = 2.

Variables: x = sqrt(z0), y = sqrt(z1), zeta = sqrt(lambda).  Fixed points
either have x = 1 (a cubic in y) or satisfy
theta y^2 = (1 - theta^2) x - theta^2 (x^2 + 1), which leads to a quadratic in
xi = x + 1/x.  The (theta, lambda) plane is cut by four curves lambda_1..4 and
the thresholds theta_4 < theta_2 < theta_3 < theta'_c; between them the number
of fixed points is 1, 3, 4, 5, 6 or 7.

Points within a relative ``tol`` of a curve (in lambda) or a threshold (in
theta) are snapped onto it and flagged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import poly

DEFAULT_TOL = 1e-9

THETA1 = math.sqrt((38.0 + math.sqrt(38.0 ** 2 + 4.0 * 71.0)) / 142.0)
THETA2 = 1.0 / math.sqrt(17.0)
THETA3 = 1.0 / math.sqrt(7.0)
THETA4 = 1.0 / math.sqrt(19.0)
THETA_C_PRIME = 1.0 / math.sqrt(3.0)
LAMBDA_TILDE = 54.0 * math.sqrt(17.0) / 289.0
LAMBDA3_AT_THETA3 = 16.0 * math.sqrt(7.0) / 49.0

# solution count for each region label
REGION_COUNTS = {
    "1(a)": 7, "1(b)": 6, "1(c)": 5, "1(d)": 5, "1(e)": 4, "1(f)": 3, "1(g)": 1,
    "2(a)": 5, "2(b)": 5, "2(c)": 4, "2(d)": 3, "2(e)": 1,
    "3(a)": 5, "3(b)": 5, "3(c)": 4, "3(d)": 3, "3(e)": 1,
    "4(a)": 5, "4(b)": 3, "4(c)": 1,
    "5(a)": 3, "5(b)": 1,
    "6": 1,
}

MEASURE_SETS = {
    7: frozenset(range(1, 8)),
    6: frozenset({1, 2, 4, 5, 6, 7}),
    "5a": frozenset({1, 4, 5, 6, 7}),
    "5b": frozenset({1, 2, 3, 6, 7}),
    4: frozenset({1, 2, 6, 7}),
    3: frozenset({1, 6, 7}),
    1: frozenset({1}),
}


@dataclass(frozen=True)
class LambdaCurves:
    theta: float
    lambda1: float | None
    lambda2: float | None
    lambda3: float
    lambda4: float
    theta1: float = THETA1
    theta2: float = THETA2
    theta3: float = THETA3
    theta4: float = THETA4
    theta_c_prime: float = THETA_C_PRIME
    lambda_tilde: float = LAMBDA_TILDE

    def ordering(self) -> str:
        """Which of the three curve orderings holds (only meaningful for theta <= theta_2)."""
        if self.lambda1 is None:
            return "undefined"
        if _close(self.theta, THETA4, DEFAULT_TOL):
            return "l1<l2=l4<l3"
        if self.theta < THETA4:
            return "l1<l4<l2<l3"
        return "l1<=l2<l4<l3"


@dataclass
class FixedPointSolution:
    x: float
    y: float
    branch: str
    sign: str | None = None
    multiplicity: int = 1
    index: int | None = None
    residuals: tuple[float, float] = (0.0, 0.0)

    @property
    def z0(self) -> float:
        return self.x * self.x

    @property
    def z1(self) -> float:
        return self.y * self.y

    def as_dict(self) -> dict:
        return {
            "x": self.x, "y": self.y, "z0": self.z0, "z1": self.z1,
            "branch": self.branch, "sign": self.sign, "multiplicity": self.multiplicity,
            "index": self.index, "residuals": list(self.residuals),
        }


@dataclass
class PhaseClassification:
    theta: float
    lam: float
    region: str
    solutions: list[FixedPointSolution] = field(default_factory=list)
    measure_indices: frozenset = frozenset()
    boundary_flag: bool = False

    @property
    def tisgm_count(self) -> int:
        return len(self.solutions)


def _close(u: float, v: float, tol: float) -> bool:
    return abs(u - v) <= tol * max(abs(u), abs(v))


def _cmp(lam: float, curve: float | None, tol: float) -> int:
    """-1 below, 0 on (within tol), +1 above."""
    if curve is None:
        raise ValueError("curve undefined")
    if _close(lam, curve, tol):
        return 0
    return -1 if lam < curve else 1


def _snap_theta(theta: float, tol: float) -> tuple[float, bool]:
    for t in (THETA4, THETA2, THETA3, THETA_C_PRIME):
        if _close(theta, t, tol):
            return t, True
    return theta, False


# -- curves ------------------------------------------------------------------

def _lambda12(theta: float) -> tuple[float, float] | None:
    if theta > THETA2:
        return None
    t2 = theta * theta
    base = -71.0 * t2 * t2 + 38.0 * t2 + 1.0
    root = math.sqrt(max((1.0 - theta) * (1.0 + theta) * (1.0 - 17.0 * t2) ** 3, 0.0))
    return (base - root) / (16.0 * theta), (base + root) / (16.0 * theta)


def _lambda3(theta: float) -> float:
    return (1.0 + theta * theta) ** 2 / (4.0 * theta)


def _lambda4(theta: float) -> float:
    return 4.0 * theta * (1.0 - 3.0 * theta * theta)


def lambda_curves(theta: float) -> LambdaCurves:
    if not theta > 0:
        raise ValueError(f"theta must be positive, got {theta}")
    if theta == THETA2:
        l12 = (LAMBDA_TILDE, LAMBDA_TILDE)
    else:
        l12 = _lambda12(theta)
    l1, l2 = l12 if l12 is not None else (None, None)
    return LambdaCurves(theta, l1, l2, _lambda3(theta), _lambda4(theta))


def discriminant_cubic(theta: float, lam: float) -> float:
    """Delta' of the x = 1 cubic; positive means one real root."""
    t = theta
    return (8.0 * t * lam * lam + (71.0 * t ** 4 - 38.0 * t * t - 1.0) * lam
            + 4.0 * t ** 7 + 12.0 * t ** 5 + 12.0 * t ** 3 + 4.0 * t) / t ** 4


# -- residuals -----------------------------------------------------------------

def system_residuals(x: float, y: float, theta: float, lam: float) -> tuple[float, float]:
    zeta = math.sqrt(lam)
    den = theta * theta * x * x + theta * y * y + 1.0
    r1 = x - (x * x + theta * y * y + theta * theta) / den
    r2 = y - zeta * (theta * x * x + y * y + theta) / den
    return r1, r2


def _with_residuals(s: FixedPointSolution, theta: float, lam: float) -> FixedPointSolution:
    s.residuals = system_residuals(s.x, s.y, theta, lam)
    return s


# -- x = 1 branch ------------------------------------------------------------

def cubic_coefficients(theta: float, lam: float) -> tuple[float, float, float, float]:
    """(a3, a2, a1, a0) of theta y^3 - zeta y^2 + (theta^2+1) y - 2 zeta theta."""
    zeta = math.sqrt(lam)
    return theta, -zeta, theta * theta + 1.0, -2.0 * zeta * theta


def _cubic_regime(theta: float, lam: float, tol: float) -> str:
    """'one', 'double', 'triple' or 'three' positive roots."""
    t, on_t = _snap_theta(theta, tol)
    if on_t and t == THETA2:
        return "triple" if _close(lam, LAMBDA_TILDE, tol) else "one"
    if theta > THETA2:
        return "one"
    l1, l2 = _lambda12(theta)
    c1, c2 = _cmp(lam, l1, tol), _cmp(lam, l2, tol)
    if c1 == 0 or c2 == 0:
        return "double"
    return "three" if c1 > 0 and c2 < 0 else "one"


def cubic_branch(theta: float, lam: float, tol: float = DEFAULT_TOL) -> list[FixedPointSolution]:
    """Positive roots y of the x = 1 cubic, descending, labelled y1 > y2 > y3."""
    a3, a2, a1, a0 = cubic_coefficients(theta, lam)
    regime = _cubic_regime(theta, lam, tol)
    if regime == "triple":
        roots = [(math.sqrt(lam) / (3.0 * theta), 3)]
    elif regime == "double":
        roots = poly.cubic_repeated_roots(a3, a2, a1, a0)
    else:
        roots = poly.cubic_real_roots(a3, a2, a1, a0)
        if regime == "one" and len(roots) > 1:
            # discriminant noise: keep the root separated from the near-pair
            ys = [r[0] for r in roots]
            gaps = [min(abs(y - v) for j, v in enumerate(ys) if j != i) for i, y in enumerate(ys)]
            roots = [roots[gaps.index(max(gaps))]]
        elif regime == "three" and len(roots) != 3:
            roots = [(r, 1) for r in poly.isolate_and_refine([a0, a1, a2, a3]).roots]
    roots = sorted((r for r in roots if r[0] > 0), key=lambda r: -r[0])
    out = []
    for i, (y, mult) in enumerate(roots, start=1):
        out.append(_with_residuals(FixedPointSolution(1.0, y, "cubic", None, mult, i), theta, lam))
    return out


# -- x != 1 branch -----------------------------------------------------------

def quartic_coefficients(theta: float, lam: float) -> list[float]:
    """Ascending coefficients of the palindromic quartic in x."""
    t = theta
    c1 = t * (3.0 * t * t - 1.0)
    return [t ** 3, c1, 4.0 * t ** 3 + lam - 2.0 * t, c1, t ** 3]


def _xi_roots(theta: float, lam: float) -> list[float]:
    # theta^3 xi^2 + theta (3 theta^2 - 1) xi + 2 theta^3 - 2 theta + lambda = 0
    t = theta
    return poly.quadratic_real_roots(t ** 3, t * (3.0 * t * t - 1.0), 2.0 * t ** 3 - 2.0 * t + lam)


def _x_pair(xi: float) -> tuple[float, float]:
    big = 0.5 * (xi + math.sqrt(max(xi * xi - 4.0, 0.0)))
    return 1.0 / big, big


def _y_of(x: float, xi: float, theta: float) -> float | None:
    # theta y^2 = x (1 - theta^2 (xi + 1))
    rhs = x * (1.0 - theta * theta * (xi + 1.0))
    if not rhs > 0:
        return None
    return math.sqrt(rhs / theta)


def collision_y(theta: float) -> float:
    """y of the x = 1 solution of the quartic branch (exists only on lambda_4)."""
    return math.sqrt((1.0 - 3.0 * theta * theta) / theta)


def quartic_branch(theta: float, lam: float, tol: float = DEFAULT_TOL) -> list[FixedPointSolution]:
    """Fixed points off the x = 1 line (plus the x = 1 collision on lambda_4).

    Solutions are labelled 4, 5 (from the smaller xi root) and 6, 7 (from the
    larger); within a pair the smaller x comes first.
    """
    t, _ = _snap_theta(theta, tol)
    if t >= THETA_C_PRIME:
        return []
    l3, l4 = _lambda3(theta), _lambda4(theta)
    c3, c4 = _cmp(lam, l3, tol), _cmp(lam, l4, tol)
    out: list[FixedPointSolution] = []

    def add_pair(xi: float, branch: str, first: int, mult: int = 1):
        for x, sign, idx in zip(_x_pair(xi), ("minus", "plus"), (first, first + 1)):
            y = _y_of(x, xi, theta)
            if y is not None:
                out.append(FixedPointSolution(x, y, branch, sign, mult, idx))

    def add_collision():
        out.append(FixedPointSolution(1.0, collision_y(theta), "collision", None, 1, None))

    if c3 > 0:
        return []
    if c3 == 0:
        if t == THETA3:
            add_collision()
        elif t < THETA3:
            xi = (1.0 - 3.0 * theta * theta) / (2.0 * theta * theta)
            add_pair(xi, "quartic-xi2", 6, mult=2)
        return [_with_residuals(s, theta, lam) for s in out]

    xis = _xi_roots(theta, lam)
    xi1, xi2 = xis[0], xis[-1]
    if t < THETA3:
        # xi2 > 2 throughout; xi1 crosses 2 on lambda_4
        if c4 > 0:
            add_pair(xi1, "quartic-xi1", 4)
        elif c4 == 0:
            add_collision()
        add_pair(xi2, "quartic-xi2", 6)
    else:
        # xi1 < 2 throughout; xi2 crosses 2 on lambda_4
        if c4 < 0:
            add_pair(xi2, "quartic-xi2", 6)
        elif c4 == 0:
            add_collision()
    return [_with_residuals(s, theta, lam) for s in out]


# -- classification ----------------------------------------------------------

def region_label(theta: float, lam: float, tol: float = DEFAULT_TOL) -> tuple[str, bool]:
    """Case label of the full fixed-point characterisation, and the boundary flag."""
    if not (theta > 0 and lam > 0):
        raise ValueError("theta and lambda must be positive")
    t, on_threshold = _snap_theta(theta, tol)
    cur = lambda_curves(theta)
    c3 = _cmp(lam, cur.lambda3, tol)
    c4 = _cmp(lam, cur.lambda4, tol) if t < THETA_C_PRIME else 1
    on_curve = c3 == 0 or (t < THETA_C_PRIME and c4 == 0)
    if t >= THETA_C_PRIME:
        return "6", on_threshold
    if t < THETA2 or t == THETA2:
        if t == THETA2:
            c1 = c2 = _cmp(lam, LAMBDA_TILDE, tol)
        else:
            c1, c2 = _cmp(lam, cur.lambda1, tol), _cmp(lam, cur.lambda2, tol)
        if t < THETA2:
            on_curve = on_curve or c1 == 0 or c2 == 0
        else:
            on_curve = on_curve or c1 == 0
    flag = on_threshold or on_curve

    if t < THETA4:
        if c4 > 0 and c2 < 0:
            return "1(a)", flag
        if c2 == 0:
            return "1(b)", flag
        if c1 > 0 and c4 <= 0:
            return "1(c)", flag
        if c2 > 0 and c3 < 0:
            return "1(d)", flag
        if c1 == 0:
            return "1(e)", flag
        if c1 < 0 or c3 == 0:
            return "1(f)", flag
        return "1(g)", flag
    if t == THETA4:
        if c1 > 0 and c2 < 0:
            return "2(a)", flag
        if c2 > 0 and c3 < 0:
            return "2(b)", flag
        if c1 == 0 or c2 == 0:
            return "2(c)", flag
        if c3 == 0 or c1 < 0:
            return "2(d)", flag
        return "2(e)", flag
    if t < THETA2:
        if c1 > 0 and c2 < 0:
            return "3(a)", flag
        if c4 > 0 and c3 < 0:
            return "3(b)", flag
        if c1 == 0 or c2 == 0:
            return "3(c)", flag
        if c3 == 0 or c1 < 0 or (c2 > 0 and c4 <= 0):
            return "3(d)", flag
        return "3(e)", flag
    if t < THETA3:
        if c4 > 0 and c3 < 0:
            return "4(a)", flag
        if c3 == 0 or c4 <= 0:
            return "4(b)", flag
        return "4(c)", flag
    if c4 < 0:
        return "5(a)", flag
    return "5(b)", flag


def _merge(cubic: list[FixedPointSolution], quartic: list[FixedPointSolution]) -> list[FixedPointSolution]:
    out = list(cubic)
    for s in quartic:
        if s.branch == "collision":
            match = min(cubic, key=lambda c: abs(c.y - s.y), default=None)
            if match is not None and abs(match.y - s.y) <= 1e-6 * max(1.0, s.y):
                match.branch = "collision"
                continue
        out.append(s)
    return out


def solutions(theta: float, lam: float, tol: float = DEFAULT_TOL) -> list[FixedPointSolution]:
    return _merge(cubic_branch(theta, lam, tol), quartic_branch(theta, lam, tol))


def classify(theta: float, lam: float, tol: float = DEFAULT_TOL) -> PhaseClassification:
    if not (theta > 0 and math.isfinite(theta)):
        raise ValueError(f"theta must be positive, got {theta}")
    if not (lam > 0 and math.isfinite(lam)):
        raise ValueError(f"lambda must be positive, got {lam}")
    region, flag = region_label(theta, lam, tol)
    sols = solutions(theta, lam, tol)
    indices = frozenset(s.index for s in sols if s.index is not None)
    return PhaseClassification(theta, lam, region, sols, indices, flag)


def count_tisgm(theta: float, lam: float, tol: float = DEFAULT_TOL) -> tuple[int, frozenset]:
    """Number of TISGMs and their indices, straight from the seven-case list."""
    if not (theta > 0 and lam > 0):
        raise ValueError("theta and lambda must be positive")
    t, _ = _snap_theta(theta, tol)
    cur = lambda_curves(theta)
    if t >= THETA_C_PRIME:
        return 1, MEASURE_SETS[1]
    c3 = _cmp(lam, cur.lambda3, tol)
    c4 = _cmp(lam, cur.lambda4, tol)
    if t == THETA2:
        c1 = c2 = _cmp(lam, LAMBDA_TILDE, tol)
    elif t < THETA2:
        c1, c2 = _cmp(lam, cur.lambda1, tol), _cmp(lam, cur.lambda2, tol)
    else:
        c1 = c2 = None

    below2 = t < THETA2
    if t < THETA4 and c4 > 0 and c2 < 0:
        return 7, MEASURE_SETS[7]
    if t < THETA4 and c2 == 0:
        return 6, MEASURE_SETS[6]
    if (t <= THETA4 and c2 > 0 and c3 < 0) or (THETA4 < t < THETA3 and c4 > 0 and c3 < 0):
        return 5, MEASURE_SETS["5a"]
    if (t < THETA4 and c1 > 0 and c4 <= 0) or (THETA4 <= t < THETA2 and c1 > 0 and c2 < 0):
        return 5, MEASURE_SETS["5b"]
    if (below2 and c1 == 0) or (THETA4 <= t < THETA2 and c2 == 0):
        return 4, MEASURE_SETS[4]
    if ((below2 and c1 < 0) or (t < THETA3 and c3 == 0)
            or (THETA4 < t < THETA2 and c2 > 0 and c4 <= 0)
            or (THETA2 <= t < THETA_C_PRIME and c4 < 0)
            or (THETA2 <= t < THETA3 and c4 == 0)):
        return 3, MEASURE_SETS[3]
    return 1, MEASURE_SETS[1]
