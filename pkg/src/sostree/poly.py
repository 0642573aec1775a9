"""Floating-point polynomial machinery for positive-root counting and isolation.

Polynomials are stored as ascending coefficient tuples.  Everything here works
on plain Python floats: the polynomials involved have degree <= 16 and numpy's
per-call overhead dominates at that size.

Root counting uses Sturm sequences on the square-free part; an independent
count is available through Descartes' rule of signs with interval bisection.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

MAX_DEGREE = 16
TRIM_RTOL = 1e-13
GCD_RTOL = 1e-9


class RootIsolationError(RuntimeError):
    """Raised when isolation or refinement hits its iteration cap."""


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Sequence[float]):
        c = trim(coeffs)
        if len(c) - 1 > MAX_DEGREE:
            raise ValueError(f"degree {len(c) - 1} exceeds supported maximum {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_descending(cls, coeffs: Sequence[float]) -> "Polynomial":
        return cls(list(coeffs)[::-1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def norm(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0)

    def __call__(self, x: float) -> float:
        return horner(self.coeffs, x)

    def deriv(self) -> "Polynomial":
        return Polynomial(derivative(self.coeffs))

    def __repr__(self):
        return f"Polynomial({list(self.coeffs)!r})"


@dataclass
class RootReport:
    positive_root_count: int
    isolated_intervals: list[tuple[float, float]] = field(default_factory=list)
    refined_roots: list[tuple[float, int]] = field(default_factory=list)
    method: str = "sturm"

    @property
    def roots(self) -> list[float]:
        return [r for r, _ in self.refined_roots]


# -- basic arithmetic ---------------------------------------------------------

def trim(coeffs: Sequence[float], rtol: float = TRIM_RTOL) -> tuple[float, ...]:
    """Drop leading coefficients that are negligible relative to the largest."""
    c = [float(v) for v in coeffs]
    scale = max((abs(v) for v in c), default=0.0)
    if scale == 0.0:
        return ()
    cut = rtol * scale
    while c and abs(c[-1]) <= cut:
        c.pop()
    return tuple(c)


def horner(coeffs: Sequence[float], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def derivative(coeffs: Sequence[float]) -> tuple[float, ...]:
    return tuple(i * c for i, c in enumerate(coeffs) if i > 0)


def polymul(p: Sequence[float], q: Sequence[float]) -> list[float]:
    if not p or not q:
        return []
    out = [0.0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0.0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def polydivmod(num: Sequence[float], den: Sequence[float], rtol: float = TRIM_RTOL):
    """Long division; the remainder is trimmed relative to the dividend's scale."""
    den = list(den)
    if not den or den[-1] == 0.0:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(num)
    scale = max((abs(v) for v in r), default=0.0)
    dd = len(den) - 1
    if len(r) - 1 < dd:
        return [], _trim_abs(r, rtol * scale)
    q = [0.0] * (len(r) - dd)
    lead = den[-1]
    for i in range(len(r) - 1, dd - 1, -1):
        f = r[i] / lead
        q[i - dd] = f
        if f != 0.0:
            for j in range(dd + 1):
                r[i - dd + j] -= f * den[j]
        r[i] = 0.0
    return q, _trim_abs(r[:dd], rtol * scale)


def _trim_abs(c: list[float], cut: float) -> list[float]:
    c = list(c)
    while c and abs(c[-1]) <= cut:
        c.pop()
    return c


def _normalize(c: Sequence[float]) -> list[float]:
    s = max(abs(v) for v in c)
    return [v / s for v in c]


def polygcd(p: Sequence[float], q: Sequence[float], rtol: float = GCD_RTOL) -> list[float]:
    """Euclid's algorithm with a relative zero test; result is monic."""
    a, b = _normalize(p), _normalize(q)
    if len(a) < len(b):
        a, b = b, a
    while b:
        _, r = polydivmod(a, b, rtol)
        a, b = b, (_normalize(r) if r else [])
    return [v / a[-1] for v in a]


def strip_zero_roots(coeffs: Sequence[float]) -> tuple[list[float], int]:
    """Divide out x**j; returns the quotient and j."""
    c = list(coeffs)
    j = 0
    while c and c[0] == 0.0:
        c.pop(0)
        j += 1
    return c, j


def _abs_scale(c: Sequence[float], r) -> float:
    a = abs(r)
    return sum(abs(v) * a ** i for i, v in enumerate(c))


def repeated_factor(coeffs: Sequence[float], rtol: float = 1e-4) -> list[float]:
    """gcd(p, p') with every root of the candidate checked against p and p'.

    Float Euclid can end on a spurious common factor after a badly scaled
    division step; such a candidate fails the check and [1.0] is returned.
    """
    c = list(trim(coeffs))
    if len(c) <= 2:
        return [1.0]
    d = derivative(c)
    g = polygcd(c, d)
    if len(g) == 1:
        return g
    for r in np.roots(g[::-1]):
        for f in (c, d):
            val = abs(sum(v * r ** i for i, v in enumerate(f)))
            if val > rtol * _abs_scale(f, r):
                return [1.0]
    return g


def squarefree_part(coeffs: Sequence[float]) -> list[float]:
    c = list(trim(coeffs))
    if len(c) <= 2:
        return c
    g = repeated_factor(c)
    if len(g) == 1:
        return _normalize(c)
    s, _ = polydivmod(c, g)
    return _normalize(s)


# -- sign counting ---------------------------------------------------------

def sign_variations(values: Sequence[float]) -> int:
    prev = 0
    n = 0
    for v in values:
        if v == 0.0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            n += 1
        prev = s
    return n


def sturm_sequence(coeffs: Sequence[float]) -> list[list[float]]:
    p0 = _normalize(coeffs)
    p1 = derivative(p0)
    seq = [p0]
    if not p1:
        return seq
    seq.append(_normalize(p1))
    while len(seq[-1]) > 1:
        _, r = polydivmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append(_normalize([-v for v in r]))
    return seq


def _variations_at(seq: list[list[float]], x: float) -> int:
    return sign_variations([horner(p, x) for p in seq])


def _variations_at_zero(seq: list[list[float]]) -> int:
    return sign_variations([p[0] for p in seq])


def _variations_at_inf(seq: list[list[float]]) -> int:
    return sign_variations([p[-1] for p in seq])


def positive_root_bound(coeffs: Sequence[float]) -> float:
    """Cauchy bound: every root has modulus below the returned value."""
    lead = coeffs[-1]
    return 1.0 + max(abs(c / lead) for c in coeffs[:-1])


def _prepare(p) -> list[float]:
    c = list(p.coeffs if isinstance(p, Polynomial) else trim(p))
    if not c:
        raise ValueError("zero polynomial has no well-defined root count")
    c, _ = strip_zero_roots(c)
    return c


def sturm_positive_count(p) -> int:
    """Number of distinct roots in (0, inf)."""
    c = _prepare(p)
    if len(c) == 1:
        return 0
    seq = sturm_sequence(squarefree_part(c))
    return _variations_at_zero(seq) - _variations_at_inf(seq)


def _mobius_coeffs(c: Sequence[float], lo: float, hi: float) -> list[float]:
    # (1+t)^d p((lo + hi t)/(1+t)); positive roots in t <-> roots in (lo, hi)
    d = len(c) - 1
    out = [0.0] * (d + 1)
    num = [1.0]
    one_plus = [1.0, 1.0]
    lin = [lo, hi]
    pow_num = [[1.0]]
    for _ in range(d):
        num = polymul(num, lin)
        pow_num.append(num)
    pow_den = [[1.0]]
    den = [1.0]
    for _ in range(d):
        den = polymul(den, one_plus)
        pow_den.append(den)
    for i, ci in enumerate(c):
        term = polymul(pow_num[i], pow_den[d - i])
        for j, v in enumerate(term):
            out[j] += ci * v
    return out


def descartes_positive_count(p, max_depth: int = 60) -> int:
    """Distinct positive roots via Descartes' rule with interval bisection."""
    c = _prepare(p)
    if len(c) == 1:
        return 0
    s = squarefree_part(c)
    scale = max(abs(v) for v in s)
    hi0 = positive_root_bound(s)
    count = 0
    stack = [(0.0, hi0, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        v = sign_variations(trim(_mobius_coeffs(s, lo, hi), 1e-15))
        if v == 0:
            continue
        if v == 1:
            count += 1
            continue
        if depth >= max_depth:
            raise RootIsolationError(f"Descartes bisection did not separate roots in ({lo}, {hi})")
        mid = 0.5 * (lo + hi)
        if abs(horner(s, mid)) <= 1e-14 * scale * max(1.0, mid) ** (len(s) - 1):
            count += 1
            # shrink away from the root at mid
            eps = 1e-9 * (hi - lo)
            stack.append((lo, mid - eps, depth + 1))
            stack.append((mid + eps, hi, depth + 1))
        else:
            stack.append((lo, mid, depth + 1))
            stack.append((mid, hi, depth + 1))
    return count


# -- isolation and refinement ------------------------------------------------

def _isolate(seq: list[list[float]], hi: float, max_depth: int) -> list[tuple[float, float]]:
    out = []
    v0 = _variations_at_zero(seq)
    vhi = _variations_at(seq, hi)
    stack = [(0.0, hi, v0, vhi, 0)]
    while stack:
        lo, up, vlo, vup, depth = stack.pop()
        n = vlo - vup
        if n <= 0:
            continue
        if n == 1:
            out.append((lo, up))
            continue
        if depth >= max_depth:
            raise RootIsolationError(f"Sturm bisection did not separate {n} roots in ({lo}, {up}]")
        mid = 0.5 * (lo + up)
        if horner(seq[0], mid) == 0.0:
            mid = lo + 0.5 * (1.0 + 2.0 ** -20) * (up - lo)
        vm = _variations_at(seq, mid)
        stack.append((mid, up, vm, vup, depth + 1))
        stack.append((lo, mid, vlo, vm, depth + 1))
    out.sort()
    return out


def _refine(s: Sequence[float], lo: float, hi: float, max_iter: int = 400) -> float:
    ds = derivative(s)
    flo = horner(s, lo)
    fhi = horner(s, hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        # root sits within rounding of an endpoint
        return lo if abs(flo) < abs(fhi) else hi
    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = horner(s, x)
        if fx == 0.0:
            return x
        if (fx > 0) == (flo > 0):
            lo, flo = x, fx
        else:
            hi = x
        d = horner(ds, x)
        step = x - fx / d if d != 0.0 else None
        if step is not None and lo < step < hi and abs(step - x) < 0.5 * (hi - lo):
            x_new = step
        else:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 4e-16 * max(abs(x), 1e-300) or hi - lo <= 4e-16 * abs(hi):
            return x_new
        x = x_new
    raise RootIsolationError(f"refinement did not converge in ({lo}, {hi})")


def _positive_roots_squarefree(s: Sequence[float], max_depth: int):
    seq = sturm_sequence(s)
    hi = positive_root_bound(s)
    intervals = _isolate(seq, hi, max_depth)
    return intervals, [_refine(s, lo, up) for lo, up in intervals]


MULTIPLICITY_RTOL = 1e-5
_EPS = sys.float_info.epsilon


def _multiplicities(c: Sequence[float], roots: list[float]) -> list[int]:
    """Order of each root, read off from which derivatives vanish there.

    Only attempted when p and p' share a validated factor.  p^(j) counts as
    vanishing at r when its Newton step |p^(j)(r) / p^(j+1)(r)| is below
    MULTIPLICITY_RTOL * max(1, r), i.e. p^(j) has a root right next to r.
    Term-size comparisons are useless here: clustered roots make the
    derivatives genuinely small through cancellation.
    """
    mult = [1] * len(roots)
    if len(c) <= 2 or not roots or len(repeated_factor(c)) <= 1:
        return mult
    derivs = [derivative(c)]
    while len(derivs[-1]) > 1:
        derivs.append(derivative(derivs[-1]))
    for i, r in enumerate(roots):
        m = 1
        for d, dd in zip(derivs, derivs[1:]):
            num, den = abs(horner(d, r)), abs(horner(dd, r))
            rounding = 64.0 * _EPS * _abs_scale(d, r)
            if num > rounding and num > MULTIPLICITY_RTOL * max(1.0, abs(r)) * den:
                break
            m += 1
        mult[i] = m
    return mult


def positive_roots_with_multiplicity(p, max_depth: int = 200) -> list[tuple[float, int]]:
    c = _prepare(p)
    if len(c) == 1:
        return []
    s = squarefree_part(c)
    _, roots = _positive_roots_squarefree(s, max_depth)
    mults = _multiplicities(c, roots)
    return [(_newton_polish(c, r) if m == 1 else r, m) for r, m in zip(roots, mults)]


def isolate_and_refine(p, tol: float = 1e-12, max_depth: int = 200, method: str = "sturm") -> RootReport:
    """Isolate every positive root and polish it.

    Each refined root r satisfies |p(r)| < tol * ||p|| * max(1, r**deg);
    a root that cannot be brought below that bound raises RootIsolationError.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    c = _prepare(p)
    if len(c) == 1:
        return RootReport(0, [], [], method)
    s = squarefree_part(c)
    intervals, roots = _positive_roots_squarefree(s, max_depth)
    mults = _multiplicities(c, roots)
    # the square-free part is only approximate; polish simple roots on p itself
    roots = [_newton_polish(c, r) if m == 1 else r for r, m in zip(roots, mults)]
    norm = max(abs(v) for v in c)
    deg = len(c) - 1
    for r, m in zip(roots, mults):
        bound = tol * norm * max(1.0, r) ** deg
        if m == 1 and abs(horner(c, r)) >= bound:
            raise RootIsolationError(f"root {r!r} residual {horner(c, r)!r} above {bound!r}")
    if method == "descartes-bisect":
        n = descartes_positive_count(c)
    elif method == "sturm":
        n = len(roots)
    else:
        raise ValueError(f"unknown method {method!r}")
    return RootReport(n, intervals, list(zip(roots, mults)), method)


# -- closed-form low degree ----------------------------------------------------

def quadratic_real_roots(a: float, b: float, c: float) -> list[float]:
    """Real roots of a x^2 + b x + c, sorted, computed without cancellation."""
    if a == 0.0:
        return [] if b == 0.0 else [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    q = -0.5 * (b + math.copysign(sq, b))
    if q == 0.0:
        return [0.0, 0.0]
    return sorted([q / a, c / q])


def _newton_polish(coef: Sequence[float], x: float, steps: int = 4) -> float:
    """Newton on ascending coefficients; keeps the iterate only while the residual drops."""
    d = derivative(coef)
    fx = horner(coef, x)
    for _ in range(steps):
        dx = horner(d, x)
        if dx == 0.0 or fx == 0.0:
            break
        xn = x - fx / dx
        fn = horner(coef, xn)
        if abs(fn) >= abs(fx):
            break
        x, fx = xn, fn
    return x


def _cbrt(v: float) -> float:
    r = abs(v) ** (1.0 / 3.0)
    if r > 0.0:
        r -= (r * r * r - abs(v)) / (3.0 * r * r)
    return math.copysign(r, v)


def cubic_discriminant(a3: float, a2: float, a1: float, a0: float) -> tuple[float, float]:
    """Discriminant of a3 x^3 + a2 x^2 + a1 x + a0 and the magnitude of its terms."""
    terms = (
        18.0 * a3 * a2 * a1 * a0,
        -4.0 * a2 ** 3 * a0,
        a2 * a2 * a1 * a1,
        -4.0 * a3 * a1 ** 3,
        -27.0 * a3 * a3 * a0 * a0,
    )
    return math.fsum(terms), sum(abs(t) for t in terms)


def cubic_repeated_roots(a3: float, a2: float, a1: float, a0: float) -> list[tuple[float, int]]:
    """Roots of a cubic known to have zero discriminant."""
    dq = a2 * a2 - 3.0 * a3 * a1
    if abs(dq) <= 1e-12 * max(a2 * a2, abs(3.0 * a3 * a1), 1e-300):
        return [(-a2 / (3.0 * a3), 3)]
    double = (9.0 * a3 * a0 - a2 * a1) / (2.0 * dq)
    single = (4.0 * a3 * a2 * a1 - 9.0 * a3 * a3 * a0 - a2 ** 3) / (a3 * dq)
    return sorted([(double, 2), (single, 1)])


def cubic_real_roots(a3: float, a2: float, a1: float, a0: float, rtol: float = 1e-12) -> list[tuple[float, int]]:
    """Real roots of a3 x^3 + a2 x^2 + a1 x + a0 with multiplicities, ascending.

    Three distinct real roots use the trigonometric form, one real root the
    cancellation-free Cardano form; a discriminant within ``rtol`` of zero
    (relative to its terms) is treated as a repeated root.
    """
    if a3 == 0.0:
        raise ValueError("leading coefficient must be nonzero")
    disc, scale = cubic_discriminant(a3, a2, a1, a0)
    coef = (a0, a1, a2, a3)
    if scale == 0.0 or abs(disc) <= rtol * scale:
        return cubic_repeated_roots(a3, a2, a1, a0)
    b, c, d = a2 / a3, a1 / a3, a0 / a3
    shift = b / 3.0
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    if disc > 0.0:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        phi = math.acos(max(-1.0, min(1.0, arg))) / 3.0
        ts = [m * math.cos(phi - 2.0 * math.pi * j / 3.0) for j in range(3)]
        roots = sorted(_newton_polish(coef, t - shift) for t in ts)
        return [(r, 1) for r in roots]
    big = math.sqrt(max(q * q / 4.0 + p ** 3 / 27.0, 0.0))
    A = -math.copysign(1.0, q) * _cbrt(abs(q) / 2.0 + big)
    t = A - p / (3.0 * A) if A != 0.0 else 0.0
    return [(_newton_polish(coef, t - shift), 1)]
