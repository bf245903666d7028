"""Attempt statistics and waiting times for two links generated in parallel.

Each link succeeds per attempt with probability ``p_i`` (both relay ports
counted). The node that finishes first stores its state while the other keeps
trying; ``n_w = <|n1 - n2|>`` attempts later both are ready. One attempt takes
``T = L / v`` with ``L`` the node-to-relay distance (elementary link ``2 L``).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .herald import LinkConfig, success_prob

__all__ = [
    "FIBER_SPEED",
    "VACUUM_SPEED",
    "AttemptModel",
    "FiberModel",
    "TimingStats",
    "MonteCarloStats",
    "transmittance",
    "diff_distribution",
    "attempt_stats",
    "link_success_from_distance",
    "sample_attempts",
    "simulate_attempts",
]

FIBER_SPEED = 2.0e5  # km/s
VACUUM_SPEED = 3.0e5  # km/s
CHUNK = 1 << 16


@dataclass(frozen=True)
class AttemptModel:
    p1: float
    p2: float

    def __post_init__(self):
        for p in (self.p1, self.p2):
            if not 0.0 < p <= 1.0:
                raise ValueError(f"success probabilities must lie in (0, 1], got {p}")

    @property
    def q1(self) -> float:
        return 1.0 - self.p1

    @property
    def q2(self) -> float:
        return 1.0 - self.p2


@dataclass(frozen=True)
class FiberModel:
    """``L`` is the node-to-relay distance in km; ``kappa`` in dB/km; ``v`` in km/s."""

    L: float = 0.0
    kappa: float = 0.2
    v: float = FIBER_SPEED

    def __post_init__(self):
        if self.L < 0 or self.kappa < 0 or not self.v > 0:
            raise ValueError("need L >= 0, kappa >= 0 and v > 0")

    @property
    def eta(self) -> float:
        return transmittance(self.L, self.kappa)

    @property
    def attempt_time(self) -> float:
        """Seconds per attempt."""
        return self.L / self.v

    @property
    def link_length(self) -> float:
        return 2.0 * self.L


@dataclass(frozen=True)
class TimingStats:
    n_w: float
    n_t: float
    n_max: float
    n_min: float
    t_prep: float
    t_wait: float

    def within_lifetime(self, lifetime: float) -> bool:
        """True when the expected waiting time stays below the memory lifetime (seconds)."""
        return self.t_wait < lifetime


@dataclass(frozen=True)
class MonteCarloStats:
    """Empirical means of ``|n1-n2|``, ``n1+n2``, ``max``, ``min`` with standard errors."""

    trials: int
    seed: int
    mean: tuple[float, float, float, float]
    stderr: tuple[float, float, float, float]

    names = ("n_w", "n_t", "n_max", "n_min")

    def as_dict(self) -> dict:
        out = {"trials": self.trials, "seed": self.seed}
        for name, m, s in zip(self.names, self.mean, self.stderr):
            out[name] = m
            out[name + "_se"] = s
        return out


def transmittance(L: float, kappa: float = 0.2) -> float:
    """``10^(-kappa L / 10)``."""
    if L < 0 or kappa < 0:
        raise ValueError("need L >= 0 and kappa >= 0")
    return 10.0 ** (-kappa * L / 10.0)


def diff_distribution(k: int, model: AttemptModel) -> float:
    """``Prob(|n1 - n2| = k)`` for independent geometric attempt counts."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    p1, p2, q1, q2 = model.p1, model.p2, model.q1, model.q2
    mult = 1.0 if k == 0 else 2.0
    return p1 * p2 * (q1**k + q2**k) * mult / (2.0 * (1.0 - q1 * q2))


def attempt_stats(model: AttemptModel, fiber: FiberModel | None = None) -> TimingStats:
    """Expected attempt counts and the matching preparation/waiting times."""
    p1, p2, q1, q2 = model.p1, model.p2, model.q1, model.q2
    n_w = (p2 * p2 * q1 + p1 * p1 * q2) / (p1 * p2 * (1.0 - q1 * q2))
    n_t = (p1 + p2) / (p1 * p2)
    n_max = 0.5 * (n_t + n_w)
    n_min = 0.5 * (n_t - n_w)
    T = fiber.attempt_time if fiber is not None else 0.0
    return TimingStats(n_w, n_t, n_max, n_min, n_max * T, n_w * T)


def link_success_from_distance(cfg: LinkConfig, fiber: FiberModel, pair, parity) -> float:
    """Per-attempt success probability ``2 P_s`` (either port) at the fiber's transmittance."""
    return success_prob(pair, parity, cfg.replace(eta=fiber.eta), both_detectors=True)


def sample_attempts(p: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """Geometric variates on ``{1, 2, ...}`` by inversion, ``ceil(ln u / ln q)``."""
    if p >= 1.0:
        return np.ones(size, dtype=np.int64)
    u = 1.0 - rng.random(size)  # (0, 1]
    n = np.ceil(np.log(u) / math.log1p(-p))
    return np.maximum(n, 1.0).astype(np.int64)


def _chunk_sums(model: AttemptModel, size: int, seed_seq: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(seed_seq))
    n1 = sample_attempts(model.p1, size, rng).astype(np.float64)
    n2 = sample_attempts(model.p2, size, rng).astype(np.float64)
    cols = np.stack([np.abs(n1 - n2), n1 + n2, np.maximum(n1, n2), np.minimum(n1, n2)])
    return np.stack([cols.sum(axis=1), (cols * cols).sum(axis=1)])


def simulate_attempts(model: AttemptModel, trials: int, seed: int = 0, workers: int = 1) -> MonteCarloStats:
    """Monte Carlo estimate of the four attempt-count expectations.

    Trials are cut into fixed chunks of ``CHUNK``; chunk ``i`` draws from a
    Philox stream keyed by ``SeedSequence(seed).spawn(...)[i]`` and partial
    sums are combined in chunk order, so the result depends only on
    ``(seed, trials)`` and not on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sizes = [CHUNK] * (trials // CHUNK)
    if trials % CHUNK:
        sizes.append(trials % CHUNK)
    seqs = np.random.SeedSequence(seed).spawn(len(sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda a: _chunk_sums(model, *a), zip(sizes, seqs)))
    else:
        parts = [_chunk_sums(model, s, q) for s, q in zip(sizes, seqs)]
    mean, stderr = [], []
    for j in range(4):
        s1 = math.fsum(p[0, j] for p in parts)
        s2 = math.fsum(p[1, j] for p in parts)
        m = s1 / trials
        var = max(s2 / trials - m * m, 0.0) * trials / max(trials - 1, 1)
        mean.append(m)
        stderr.append(math.sqrt(var / trials))
    return MonteCarloStats(trials, seed, tuple(mean), tuple(stderr))
