"""SOS model on a Cayley tree: parameters, finite balls, energies, Gibbs tables.

Everything is expressed through theta = exp(beta*J) and the reduced external
field; beta and J never appear separately.  Ferromagnetic means theta < 1.

Boundary laws are kept in exponential coordinates ``z_i = exp(h~_i)`` where
h~ is the reduced boundary field *including* the vertex's own external field,
which is the coordinate in which the translation-invariant fixed-point
equations read ``z_0 = (...)^k`` and ``z_1 = lambda * (...)^k``.  On the
boundary sphere of a ball the Hamiltonian already applies the external field,
so the extra boundary factor is ``z_s / exp(alpha~_s)``; the product of both
is simply ``z_s`` (with ``z_m = 1``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels

DEFAULT_ENUMERATION_CAP = 10 ** 7


class EnumerationCapError(ValueError):
    pass


@dataclass(frozen=True)
class ModelParams:
    k: int
    m: int
    theta: float
    alpha_reduced: tuple[float, ...]

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"tree degree k must be >= 2, got {self.k}")
        if self.m < 1:
            raise ValueError(f"spin ceiling m must be >= 1, got {self.m}")
        if not (self.theta > 0 and math.isfinite(self.theta)):
            raise ValueError(f"theta must be positive and finite, got {self.theta}")
        if len(self.alpha_reduced) != self.m:
            raise ValueError("alpha_reduced must have length m")
        object.__setattr__(self, "alpha_reduced", tuple(float(a) for a in self.alpha_reduced))

    @classmethod
    def three_state(cls, theta: float, lam: float, k: int = 2) -> "ModelParams":
        """m = 2 with alpha~_0 = 0 and alpha~_1 = ln(lambda)."""
        if not lam > 0:
            raise ValueError(f"lambda must be positive, got {lam}")
        return cls(k=k, m=2, theta=theta, alpha_reduced=(0.0, math.log(lam)))

    @property
    def lam(self) -> float:
        if self.m != 2:
            raise AttributeError("lambda is only defined for m = 2")
        return math.exp(self.alpha_reduced[1])

    @property
    def q(self) -> int:
        return self.m + 1

    def field_weights(self) -> np.ndarray:
        """exp(alpha~_s) for s = 0..m, with alpha~_m = 0."""
        return np.exp(np.append(np.asarray(self.alpha_reduced), 0.0))

    def edge_weights(self) -> np.ndarray:
        s = np.arange(self.q)
        return float(self.theta) ** np.abs(s[:, None] - s[None, :]).astype(float)


@dataclass(frozen=True)
class BoundaryLaw:
    z: tuple[float, ...]

    def __post_init__(self):
        z = tuple(float(v) for v in self.z)
        if not z or not all(v > 0 and math.isfinite(v) for v in z):
            raise ValueError(f"boundary law entries must be positive and finite, got {self.z}")
        object.__setattr__(self, "z", z)

    @classmethod
    def from_log(cls, h: Sequence[float]) -> "BoundaryLaw":
        return cls(tuple(math.exp(v) for v in h))

    def log(self) -> tuple[float, ...]:
        return tuple(math.log(v) for v in self.z)

    def full(self) -> np.ndarray:
        """(z_0, ..., z_{m-1}, 1)."""
        return np.append(np.asarray(self.z), 1.0)


@dataclass(frozen=True)
class FiniteBall:
    """Ball V_n around the root, vertices in breadth-first order.

    Breadth-first order makes V_j a prefix of V_n for every j <= n.
    """

    k: int
    n: int
    parent: tuple[int, ...]
    level: tuple[int, ...]
    successors: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.parent)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(p, v) for v, p in enumerate(self.parent) if p >= 0]

    def sphere(self, j: int) -> list[int]:
        return [v for v, d in enumerate(self.level) if d == j]

    def prefix_size(self, j: int) -> int:
        """|V_j|."""
        return sum(1 for d in self.level if d <= j)

    def sub_ball(self, j: int) -> "FiniteBall":
        if not 0 <= j <= self.n:
            raise ValueError(f"radius {j} outside 0..{self.n}")
        size = self.prefix_size(j)
        succ = tuple(tuple(c for c in self.successors[v] if c < size) for v in range(size))
        return FiniteBall(self.k, j, self.parent[:size], self.level[:size], succ)


def build_ball(k: int, n: int) -> FiniteBall:
    if k < 2:
        raise ValueError(f"tree degree k must be >= 2, got {k}")
    if n < 0:
        raise ValueError(f"radius must be >= 0, got {n}")
    parent = [-1]
    level = [0]
    successors: list[list[int]] = [[]]
    frontier = [0]
    for d in range(1, n + 1):
        nxt = []
        for x in frontier:
            branching = k + 1 if x == 0 else k
            for _ in range(branching):
                v = len(parent)
                parent.append(x)
                level.append(d)
                successors.append([])
                successors[x].append(v)
                nxt.append(v)
        frontier = nxt
    return FiniteBall(k, n, tuple(parent), tuple(level), tuple(tuple(s) for s in successors))


@dataclass(frozen=True)
class Configuration:
    spins: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "spins", tuple(int(s) for s in self.spins))

    def validate(self, ball: FiniteBall, m: int) -> None:
        if len(self.spins) != ball.size:
            raise ValueError(f"configuration assigns {len(self.spins)} of {ball.size} vertices")
        bad = [s for s in self.spins if not 0 <= s <= m]
        if bad:
            raise ValueError(f"spin values {bad} outside 0..{m}")


def _spins(cfg) -> tuple[int, ...]:
    return cfg.spins if isinstance(cfg, Configuration) else tuple(int(s) for s in cfg)


def hamiltonian_energy(cfg, ball: FiniteBall, params: ModelParams) -> float:
    """beta * H_n(sigma) for the translation-invariant reduced field."""
    c = Configuration(_spins(cfg))
    c.validate(ball, params.m)
    s = c.spins
    alpha = params.alpha_reduced + (0.0,)
    grad = sum(abs(s[x] - s[y]) for x, y in ball.edges)
    return -math.log(params.theta) * grad - sum(alpha[v] for v in s)


def configuration_weight(cfg, ball: FiniteBall, params: ModelParams) -> float:
    """exp(-beta*H) as an explicit product over edges and vertices."""
    c = Configuration(_spins(cfg))
    c.validate(ball, params.m)
    s = c.spins
    fw = params.field_weights()
    w = 1.0
    for x, y in ball.edges:
        w *= params.theta ** abs(s[x] - s[y])
    for v in s:
        w *= fw[v]
    return float(w)


def vertex_factor_table(ball: FiniteBall, params: ModelParams, law: BoundaryLaw, n: int) -> np.ndarray:
    if len(law.z) != params.m:
        raise ValueError(f"boundary law must have {params.m} entries")
    size = ball.prefix_size(n)
    table = np.tile(params.field_weights(), (size, 1))
    boundary = [v for v in range(size) if ball.level[v] == n]
    table[boundary] = law.full()
    return table


def gibbs_weights(ball: FiniteBall, params: ModelParams, law: BoundaryLaw, n: int,
                  cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    """Unnormalized weights over Phi^{V_n}, flat in product order."""
    if n > ball.n:
        raise ValueError(f"ball radius {ball.n} smaller than requested {n}")
    if ball.k != params.k:
        raise ValueError("ball degree does not match model degree")
    size = ball.prefix_size(n)
    terms = params.q ** size
    if terms > cap:
        raise EnumerationCapError(f"{terms} configurations exceed enumeration cap {cap}")
    vf = vertex_factor_table(ball, params, law, n)
    return kernels.ball_weights(ball.parent[:size], vf, params.edge_weights())


def gibbs_table(ball: FiniteBall, params: ModelParams, law: BoundaryLaw, n: int,
                cap: int = DEFAULT_ENUMERATION_CAP) -> np.ndarray:
    w = gibbs_weights(ball, params, law, n, cap)
    return w / w.sum()


def recurrence_map(u: Sequence[float], theta: float, m: int) -> np.ndarray:
    """F(u; theta) on reduced log-coordinates, general m."""
    u = np.asarray(u, dtype=float)
    if u.shape != (m,):
        raise ValueError(f"u must have length m={m}")
    if not theta > 0:
        raise ValueError("theta must be positive")
    j = np.arange(m)
    # shift by max(u) so large u does not overflow; the ratio is unchanged
    shift = max(float(u.max()), 0.0)
    e = np.exp(u - shift)
    tail = np.exp(-shift)
    den = np.sum(theta ** (m - j) * e) + tail
    out = np.empty(m)
    for i in range(m):
        num = np.sum(theta ** np.abs(i - j).astype(float) * e) + theta ** (m - i) * tail
        out[i] = math.log(num / den)
    return out
