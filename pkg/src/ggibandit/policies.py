"""Bandit learners over mixed policies.

All learners share one round protocol, driven by the harness:

    alpha = learner.policy(t, mu_hat)   # distribution played in round t
    k ~ alpha; x ~ arm k                # environment step
    state.update(k, x)
    learner.observe(t, mu_hat)          # post-update bookkeeping

OgdeLearner follows projected online gradient descent with forced
exploration: after K deterministic initialization pulls (arms 1..K, each
recorded as the one-hot policy it is) it starts from the uniform policy
and, at the end of every round t > K, steps

    alpha <- Pi_{trunc simplex, floor eta_t/K}(alpha - eta_t * grad)

where grad is the GGI subgradient at alpha under the current estimates
and eta_t = min(1, sqrt(2)/(1 - 1/sqrt(K)) * sqrt(ln(2/delta)/t)).  The
clamp at 1 keeps the truncated simplex non-empty in the early rounds where
the raw schedule exceeds 1.

MolpLearner uses the same initialization and the same eta_t schedule, but
plays the exact minimizer of the estimated GGI over the truncated simplex,
recomputed by linear programming every round.
"""

from __future__ import annotations

from math import log, sqrt

import numpy as np

from .ggi import GgiWeights, ggi_policy_gradient
from .programs import molp_step_policy
from .projection import project_truncated_simplex


def step_size(K: int, delta: float, t: int) -> float:
    """Exploration/step schedule eta_t, clamped to at most 1."""
    if K < 2:
        raise ValueError("K must be >= 2 (K = 1 degenerates the schedule)")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    if t < 1:
        raise ValueError("t must be >= 1")
    coef = sqrt(2.0) / (1.0 - 1.0 / sqrt(K))
    raw = coef * sqrt(log(2.0 / delta) / t)
    return raw if raw < 1.0 else 1.0


def ogde_update(alpha, eta: float, gradient) -> np.ndarray:
    """One projected-gradient step onto the eta-truncated simplex."""
    alpha = np.asarray(alpha, dtype=float)
    gradient = np.asarray(gradient, dtype=float)
    if alpha.shape != gradient.shape:
        raise ValueError("alpha and gradient must have the same length")
    return project_truncated_simplex(alpha - eta * gradient, eta)


def sample_arm(alpha, rng: np.random.Generator) -> int:
    """Draw an arm index from a mixed policy by inverse CDF (one uniform).

    Ties and rounding are resolved by ascending arm index, so the draw is
    a deterministic function of (alpha, uniform).
    """
    alpha = np.asarray(alpha, dtype=float)
    if abs(alpha.sum() - 1.0) > 1e-9 or np.any(alpha < -1e-9):
        raise ValueError("alpha is not a probability vector")
    u = rng.random()
    acc = 0.0
    for k in range(alpha.size - 1):
        acc += alpha[k]
        if u < acc:
            return k
    return alpha.size - 1


def _one_hot(k: int, K: int) -> np.ndarray:
    a = np.zeros(K)
    a[k] = 1.0
    return a


class OgdeLearner:
    """Projected-gradient learner with forced exploration."""

    name = "mo-ogde"

    def __init__(self, K: int, D: int, weights: GgiWeights, delta: float = 0.1):
        if K < 2:
            raise ValueError("K must be >= 2")
        if not 0.0 < delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if weights.dim != D:
            raise ValueError("weight dimension must equal D")
        self.K = K
        self.D = D
        self.weights = weights
        self.delta = delta
        self.alpha = np.full(K, 1.0 / K)

    def policy(self, t: int, mu_hat) -> np.ndarray:
        if t <= self.K:
            return _one_hot(t - 1, self.K)
        return self.alpha.copy()

    def observe(self, t: int, mu_hat) -> None:
        if t == self.K:
            self.alpha = np.full(self.K, 1.0 / self.K)
        elif t > self.K:
            eta = step_size(self.K, self.delta, t)
            g = ggi_policy_gradient(self.weights, mu_hat, self.alpha)
            self.alpha = ogde_update(self.alpha, eta, g)


class MolpLearner:
    """Plays the LP-optimal policy over the eta_t-truncated simplex."""

    name = "mo-lp"

    def __init__(self, K: int, D: int, weights: GgiWeights, delta: float = 0.1):
        if K < 2:
            raise ValueError("K must be >= 2")
        if not 0.0 < delta < 1.0:
            raise ValueError("delta must lie in (0, 1)")
        if weights.dim != D:
            raise ValueError("weight dimension must equal D")
        self.K = K
        self.D = D
        self.weights = weights
        self.delta = delta

    def policy(self, t: int, mu_hat) -> np.ndarray:
        if t <= self.K:
            return _one_hot(t - 1, self.K)
        return molp_step_policy(self.weights, mu_hat, step_size(self.K, self.delta, t))

    def observe(self, t: int, mu_hat) -> None:
        pass


class FixedArmLearner:
    """Always plays one arm (0-based index); regret baseline."""

    def __init__(self, k: int, K: int):
        if not 0 <= k < K:
            raise ValueError(f"arm index {k} out of range [0, {K})")
        self.K = K
        self.k = k
        self.name = f"fixed({k + 1})"

    def policy(self, t: int, mu_hat) -> np.ndarray:
        return _one_hot(self.k, self.K)

    def observe(self, t: int, mu_hat) -> None:
        pass


class UniformLearner:
    """Plays every arm with probability 1/K; regret baseline."""

    name = "uniform"

    def __init__(self, K: int):
        if K < 1:
            raise ValueError("K must be >= 1")
        self.K = K

    def policy(self, t: int, mu_hat) -> np.ndarray:
        return np.full(self.K, 1.0 / self.K)

    def observe(self, t: int, mu_hat) -> None:
        pass
