"""Exact finite-ball checks that a boundary law defines consistent marginals.

A translation-invariant law z is permissible iff ln z = alpha~ + k F(ln z).
Here that is checked two ways: by evaluating the identity directly and by
summing the radius-(n+1) distribution over the outer sphere and comparing it
with the radius-n distribution, configuration by configuration.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import (
    DEFAULT_ENUMERATION_CAP,
    BoundaryLaw,
    Configuration,
    ModelParams,
    build_ball,
    gibbs_weights,
    recurrence_map,
)

PASS_THRESHOLD = 1e-10
FAIL_THRESHOLD = 1e-6


@dataclass
class CompatReport:
    n: int
    max_abs_discrepancy: float
    worst_configuration: Configuration
    identity_residual: tuple[float, ...]

    @property
    def verdict(self) -> str:
        if self.max_abs_discrepancy < PASS_THRESHOLD:
            return "compatible"
        if self.max_abs_discrepancy > FAIL_THRESHOLD:
            return "incompatible"
        return "inconclusive"


def check_identity(params: ModelParams, law: BoundaryLaw) -> np.ndarray:
    """h~ - alpha~ - k F(h~; theta), with h~ = ln z."""
    if len(law.z) != params.m:
        raise ValueError(f"boundary law must have {params.m} entries")
    h = np.log(np.asarray(law.z))
    return h - np.asarray(params.alpha_reduced) - params.k * recurrence_map(h, params.theta, params.m)


def root_law(params: ModelParams, law: BoundaryLaw) -> BoundaryLaw:
    """Law seen at the root, which has k+1 successors instead of k.

    z * exp(F(ln z)): one more successor than a non-root vertex.  At a fixed
    point this is exp(alpha~ + (k+1) F(ln z)); away from one it still differs
    from what the radius-1 ball induces, so radius 0 keeps discriminating.
    """
    h = np.log(np.asarray(law.z))
    return BoundaryLaw(tuple(np.asarray(law.z) * np.exp(recurrence_map(h, params.theta, params.m))))


def _marginal_pair(params: ModelParams, law: BoundaryLaw, n: int, cap: int):
    ball = build_ball(params.k, n + 1)
    outer = gibbs_weights(ball, params, law, n + 1, cap)
    inner = gibbs_weights(ball, params, root_law(params, law) if n == 0 else law, n, cap)
    q_inner = inner.size
    summed = outer.reshape(q_inner, -1).sum(axis=1)
    return ball, outer, inner, summed


def check_compatibility(params: ModelParams, law: BoundaryLaw, n: int,
                        cap: int = DEFAULT_ENUMERATION_CAP) -> CompatReport:
    if n < 0:
        raise ValueError("radius must be >= 0")
    ball, outer, inner, summed = _marginal_pair(params, law, n, cap)
    mu_n = inner / inner.sum()
    marg = summed / outer.sum()
    diff = np.abs(marg - mu_n)
    worst = int(np.argmax(diff))
    size = ball.prefix_size(n)
    spins = np.unravel_index(worst, (params.q,) * size)
    cfg = Configuration(tuple(int(s) for s in spins))
    return CompatReport(n, float(diff[worst]), cfg, tuple(float(r) for r in check_identity(params, law)))


def partition_ratio(params: ModelParams, law: BoundaryLaw, n: int,
                    cap: int = DEFAULT_ENUMERATION_CAP) -> float:
    """Z_{n+1} / (A_n Z_n); equals 1 when the law is a fixed point.

    A_n is the product over the (n+1)-sphere of the per-successor normaliser
    sum_j theta^|m-j| z_j, taken in the gauge z_m = 1.  Radius 0 uses the
    root's own law, see :func:`root_law`.
    """
    ball, outer, inner, _ = _marginal_pair(params, law, n, cap)
    z = law.full()
    per_child = sum(params.theta ** (params.m - j) * z[j] for j in range(params.q))
    a_n = per_child ** len(ball.sphere(n + 1))
    return float(outer.sum() / (a_n * inner.sum()))


def random_law(m: int, rng: np.random.Generator) -> BoundaryLaw:
    """Entries log-uniform on [e^-3, e^3]."""
    return BoundaryLaw(tuple(np.exp(rng.uniform(-3.0, 3.0, size=m))))


@dataclass
class ProbeSummary:
    trials: int
    fixed_points: int
    if_violations: list = field(default_factory=list)
    only_if_violations: list = field(default_factory=list)
    inconclusive: int = 0
    random_rejected: int = 0

    @property
    def passed(self) -> bool:
        return not self.if_violations and not self.only_if_violations


def equivalence_probe(params: ModelParams, trials: int, n: int, seed: int = 0,
                      fixed_laws: list[BoundaryLaw] | None = None,
                      cap: int = DEFAULT_ENUMERATION_CAP) -> ProbeSummary:
    """Probe both directions of: identity residual ~ 0 <=> marginals compatible.

    Random laws exercise the only-if direction; ``fixed_laws`` (or, for
    k = 2, m = 2, the classifier's fixed points) exercise the if direction.
    """
    rng = np.random.default_rng(seed)
    laws = [random_law(params.m, rng) for _ in range(trials)]
    if fixed_laws is None and params.k == 2 and params.m == 2:
        from .k2 import solutions

        fixed_laws = [BoundaryLaw((s.z0, s.z1)) for s in solutions(params.theta, params.lam)]
    laws += list(fixed_laws or [])
    out = ProbeSummary(trials, len(fixed_laws or []))
    for i, law in enumerate(laws):
        rep = check_compatibility(params, law, n, cap)
        if i < trials and rep.verdict == "incompatible":
            out.random_rejected += 1
        res = max(abs(r) for r in rep.identity_residual)
        disc = rep.max_abs_discrepancy
        if res < 1e-12 and disc >= PASS_THRESHOLD:
            out.if_violations.append((law, res, disc))
        elif disc < 1e-12 and res >= FAIL_THRESHOLD:
            out.only_if_violations.append((law, res, disc))
        elif rep.verdict == "inconclusive":
            out.inconclusive += 1
    return out
