"""Translation-invariant boundary laws for general k on the z0 = 1 branch.

With z0 = 1 the second fixed-point equation reduces to

    z1 = lambda * ((2 theta + z1) / (theta^2 + theta z1 + 1))^k,

and the substitution a = 2 theta^(k+1) / lambda, b = (1 + theta^2) / (2 theta^2),
x = z1 / (2 theta) turns it into a x = ((1 + x) / (b + x))^k.  The number of
positive solutions (1, 2 or 3) is known in closed form; this module computes
it, the critical temperature and critical fields, and the roots themselves.
For k >= 3 only this branch is solved, so counts there are lower bounds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from . import poly

BOUNDARY_RTOL = 1e-9


class CurveUndefinedError(ValueError):
    """Critical fields requested where they do not exist (theta >= theta_c)."""


@dataclass(frozen=True)
class ABForm:
    a: float
    b: float
    theta: float
    k: int

    def lam(self) -> float:
        return 2.0 * self.theta ** (self.k + 1) / self.a

    def x_from_z1(self, z1: float) -> float:
        return z1 / (2.0 * self.theta)

    def z1_from_x(self, x: float) -> float:
        return 2.0 * self.theta * x


@dataclass(frozen=True)
class Lemma1Result:
    count: int
    b0: float
    x1: float | None = None
    x2: float | None = None
    a1: float | None = None
    a2: float | None = None
    D: float | None = None
    boundary: bool = False


@dataclass(frozen=True)
class BranchRoot:
    z1: float
    multiplicity: int = 1

    @property
    def z0(self) -> float:
        return 1.0


def _check_positive(**kw):
    for name, v in kw.items():
        if not (v > 0 and math.isfinite(v)):
            raise ValueError(f"{name} must be positive and finite, got {v}")


def ab_transform(theta: float, lam: float, k: int) -> ABForm:
    _check_positive(theta=theta, lam=lam)
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    a = 2.0 * theta ** (k + 1) / lam
    b = (1.0 + theta * theta) / (2.0 * theta * theta)
    return ABForm(a, b, theta, k)


def b0(k: int) -> float:
    return ((k + 1) / (k - 1)) ** 2


def _quadratic_roots(b: float, k: int):
    # x^2 + [2 - (b-1)(k-1)] x + b = 0
    D = (b - 1.0) * (k - 1) ** 2 * (b - b0(k))
    s = (b - 1.0) * (k - 1) - 2.0
    sq = math.sqrt(D)
    # the larger root first, the smaller from the product x1 x2 = b
    x2 = 0.5 * (s + sq)
    x1 = b / x2
    return D, x1, x2


def _near(u: float, v: float, rtol: float) -> bool:
    return abs(u - v) <= rtol * max(abs(u), abs(v))


def lemma1_count(a: float, b: float, k: int, rtol: float = BOUNDARY_RTOL) -> Lemma1Result:
    """Number of positive solutions of a x = ((1+x)/(b+x))^k.

    On the thresholds a = a1 or a = a2 (relative tolerance ``rtol``) the
    count is 2 and ``boundary`` is set.
    """
    _check_positive(a=a, b=b)
    bb = b0(k)
    if b <= bb:
        return Lemma1Result(1, bb)
    D, x1, x2 = _quadratic_roots(b, k)
    a1 = ((1.0 + x1) / (b + x1)) ** k / x1
    a2 = ((1.0 + x2) / (b + x2)) ** k / x2
    if _near(a, a1, rtol) or _near(a, a2, rtol):
        count, edge = 2, True
    elif a1 < a < a2:
        count, edge = 3, False
    else:
        count, edge = 1, False
    return Lemma1Result(count, bb, x1, x2, a1, a2, D, edge)


def theta_c(k: int) -> float:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return (k - 1) / math.sqrt(k * k + 6 * k + 1)


def lambda_star(theta: float, k: int) -> tuple[float, float]:
    _check_positive(theta=theta)
    if theta >= theta_c(k):
        raise CurveUndefinedError(f"critical fields need theta < theta_c({k}) = {theta_c(k):.6f}, got {theta}")
    b = (1.0 + theta * theta) / (2.0 * theta * theta)
    res = lemma1_count(1.0, b, k)
    scale = 2.0 * theta ** (k + 1)
    return scale / res.a2, scale / res.a1


def z0eq1_residual(z1: float, theta: float, lam: float, k: int) -> float:
    return z1 - lam * ((2.0 * theta + z1) / (theta * theta + theta * z1 + 1.0)) ** k


def full_system_residuals(z0: float, z1: float, theta: float, lam: float, k: int) -> tuple[float, float]:
    """Residuals of both translation-invariant fixed-point equations."""
    den = theta * theta * z0 + theta * z1 + 1.0
    r0 = z0 - ((z0 + theta * z1 + theta * theta) / den) ** k
    r1 = z1 - lam * ((theta * z0 + z1 + theta) / den) ** k
    return r0, r1


def log_residuals(z0: float, z1: float, theta: float, lam: float, k: int) -> tuple[float, float]:
    """The same two equations in logarithmic form, ln z - ln(rhs).

    Scale-free, so it stays meaningful for roots of size 1e6 and beyond where
    the absolute form is limited by the spacing of floats near z.
    """
    den = theta * theta * z0 + theta * z1 + 1.0
    r0 = math.log(z0) - k * math.log((z0 + theta * z1 + theta * theta) / den)
    r1 = math.log(z1) - math.log(lam) - k * math.log((theta * z0 + z1 + theta) / den)
    return r0, r1


def z0_factorization(z0: float, z1: float, theta: float, k: int) -> tuple[float, float]:
    """Both sides of z0 F^k - E^k = (z0 - 1) [F^k + (theta^2 - 1) sum E^j F^(k-1-j)].

    For theta >= 1 the bracket is positive, so z0 = 1 is forced.
    """
    E = z0 + theta * z1 + theta * theta
    F = theta * theta * z0 + theta * z1 + 1.0
    lhs = z0 * F ** k - E ** k
    bracket = F ** k + (theta * theta - 1.0) * sum(E ** j * F ** (k - 1 - j) for j in range(k))
    return lhs, (z0 - 1.0) * bracket


def cleared_polynomial(a: float, b: float, k: int) -> list[float]:
    """Ascending coefficients of a x (b+x)^k - (1+x)^k."""
    c = [0.0] * (k + 2)
    for j in range(k + 1):
        c[j + 1] += a * comb(k, j) * b ** (k - j)
        c[j] -= comb(k, j)
    return c


def scaled_cleared_polynomial(a: float, b: float, k: int) -> list[float]:
    """The cleared polynomial in u = x / b, divided by b^k.

    Ascending coefficients of a b u (1+u)^k - (1/b + u)^k.  For small theta
    the unscaled form has a leading coefficient many orders of magnitude
    below the others; here the leading-to-largest ratio is about a b.
    """
    c = [0.0] * (k + 2)
    for j in range(k + 1):
        c[j + 1] += a * b * comb(k, j)
        c[j] -= comb(k, j) * b ** (j - k)
    return c


def _polish_z1(z1: float, theta: float, lam: float, k: int, steps: int = 8) -> float:
    def g(z):
        return z0eq1_residual(z, theta, lam, k)

    def dg(z):
        u = 2.0 * theta + z
        w = theta * theta + theta * z + 1.0
        r = u / w
        dr = (w - theta * u) / (w * w)
        return 1.0 - lam * k * r ** (k - 1) * dr

    gz = g(z1)
    for _ in range(steps):
        d = dg(z1)
        if gz == 0.0 or d == 0.0:
            break
        zn = z1 - gz / d
        gn = g(zn)
        if not zn > 0 or abs(gn) >= abs(gz):
            break
        z1, gz = zn, gn
    return z1


def solve_z0eq1_branch(theta: float, lam: float, k: int, rtol: float = BOUNDARY_RTOL) -> list[BranchRoot]:
    """All positive z1 with (1, z1) a fixed point, ascending.

    A tangential root at a = a1 or a = a2 is returned once, with
    multiplicity 2.
    """
    ab = ab_transform(theta, lam, k)
    info = lemma1_count(ab.a, ab.b, k, rtol)
    coeffs = scaled_cleared_polynomial(ab.a, ab.b, k)
    if info.boundary:
        xd = info.x1 if _near(ab.a, info.a1, rtol) else info.x2
        ud = xd / ab.b
        # divide out (u - ud)^2 and take the remaining positive roots
        q, _ = poly.polydivmod(coeffs, [ud * ud, -2.0 * ud, 1.0])
        rest = [] if len(q) < 2 else poly.isolate_and_refine(q, tol=1e-8).roots
        xs = [(xd, 2)] + [(ab.b * u, 1) for u in rest if not _near(ab.b * u, xd, 1e-6)]
    else:
        xs = [(ab.b * u, 1) for u in poly.isolate_and_refine(coeffs).roots]
    out = []
    for x, mult in sorted(xs):
        z1 = ab.z1_from_x(x)
        if mult == 1:
            z1 = _polish_z1(z1, theta, lam, k)
        out.append(BranchRoot(z1, mult))
    return out


def tisgm_lower_bound(theta: float, lam: float, k: int, rtol: float = BOUNDARY_RTOL) -> int:
    _check_positive(theta=theta, lam=lam)
    if theta >= theta_c(k):
        return 1
    l1, l2 = lambda_star(theta, k)
    if _near(lam, l1, rtol) or _near(lam, l2, rtol):
        return 2
    return 3 if l1 < lam < l2 else 1


def prop2_region(theta: float) -> bool:
    """True when theta >= 1, where the full system has exactly one solution."""
    _check_positive(theta=theta)
    return theta >= 1.0
