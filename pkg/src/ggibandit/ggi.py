"""Generalized Gini Index (GGI) of vector-valued costs.

For a cost vector x in R^D and non-increasing weights w_1 >= ... >= w_D >= 0,

    G_w(x) = sum_d w_d * x_sigma(d)

where sigma sorts the components of x in decreasing order.  Because the
weights are non-increasing this equals max over all permutations pi of
w^T x_pi, so G_w is a piecewise-linear convex function.  Lower values are
better (costs): the index rewards both efficiency (Pareto monotonicity)
and balance (it never increases under a Pigou-Dalton transfer that moves
cost from a higher to a lower component).

An equivalent form uses cumulative ordered sums.  Here the Lorenz vector
L(x) accumulates components from the largest down:

    L_d(x) = sum of the d LARGEST components of x,
    G_w(x) = sum_d w'_d * L_d(x),   w'_d = w_d - w_{d+1}  (w_{D+1} = 0).

Largest-first accumulation is the convention used throughout this package;
it is the one under which the sorted form, the Lorenz form and the
linear-programming form (see ggibandit.programs) all evaluate to the same
number.

The module also provides the subgradient of f(alpha) = G_w(mu @ alpha),
the GGI of the expected cost of a mixed policy alpha over arms with mean
cost matrix mu (D x K, one column per arm).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SIMPLEX_TOL = 1e-9


def _as_cost_vector(x, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-d vector")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must have finite components")
    return arr


@dataclass(frozen=True)
class GgiWeights:
    """Non-increasing GGI weight vector plus its difference vector.

    w_diff[d] = w[d] - w[d+1] (with w_{D+1} = 0); all entries are >= 0 and
    they telescope back to w_diff.sum() == w[0].
    """

    w: np.ndarray
    w_diff: np.ndarray = field(init=False)
    strict: bool = False

    def __post_init__(self):
        w = _as_cost_vector(self.w, "w")
        if np.any(w < 0.0) or np.any(w > 1.0):
            raise ValueError("weights must lie in [0, 1]")
        diffs = np.diff(w)
        if np.any(diffs > 0.0):
            raise ValueError("weights must be non-increasing")
        if self.strict and np.any(diffs >= 0.0):
            raise ValueError("weights must be strictly decreasing")
        w = w.copy()
        w.setflags(write=False)
        w_diff = w - np.append(w[1:], 0.0)
        w_diff.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "w_diff", w_diff)

    @property
    def dim(self) -> int:
        return self.w.size


def gini_weights(D: int) -> GgiWeights:
    """Weights w_d = (2(D - d) + 1) / D^2 recovering the classical Gini index.

    They are strictly decreasing and sum to exactly 1.
    """
    if D < 1:
        raise ValueError("D must be >= 1")
    d = np.arange(1, D + 1, dtype=float)
    return GgiWeights((2.0 * (D - d) + 1.0) / (D * D), strict=True)


def geometric_weights(D: int) -> GgiWeights:
    """Weights w_d = 2^-(d-1): 1, 1/2, 1/4, ...  Strictly decreasing."""
    if D < 1:
        raise ValueError("D must be >= 1")
    return GgiWeights(np.ldexp(1.0, -np.arange(D)), strict=True)


def lorenz_vector(x) -> np.ndarray:
    """Cumulative sums of the components of x sorted in decreasing order.

    L[d-1] is the sum of the d largest components, so L is non-decreasing
    for non-negative x, L[0] = max(x) and L[-1] = sum(x).
    """
    arr = _as_cost_vector(x)
    return np.cumsum(np.sort(arr)[::-1])


def ggi_value(weights: GgiWeights, x) -> float:
    """G_w(x) via the sorted form: dot the weights with x sorted decreasingly."""
    arr = _as_cost_vector(x)
    if arr.size != weights.dim:
        raise ValueError(f"dimension mismatch: weights {weights.dim}, x {arr.size}")
    return float(np.dot(weights.w, np.sort(arr)[::-1]))


def ggi_via_lorenz(weights: GgiWeights, x) -> float:
    """G_w(x) via the Lorenz form sum_d w'_d L_d(x).

    Agrees with ggi_value up to floating-point roundoff.
    """
    arr = _as_cost_vector(x)
    if arr.size != weights.dim:
        raise ValueError(f"dimension mismatch: weights {weights.dim}, x {arr.size}")
    return float(np.dot(weights.w_diff, lorenz_vector(arr)))


def descending_permutation(y: np.ndarray) -> np.ndarray:
    """Permutation sorting y in decreasing order, ties broken by original index.

    Stable tie handling makes downstream subgradients deterministic; any
    tie-consistent permutation would be a valid choice.
    """
    return np.argsort(-y, kind="stable")


def ggi_policy_gradient(weights: GgiWeights, mu, alpha) -> np.ndarray:
    """Subgradient of f(alpha) = G_w(mu @ alpha) at a point of the simplex.

    Component k is sum_d w_d * mu[pi(d), k] where pi sorts mu @ alpha in
    decreasing order.  With mu in [0,1]^{D x K} every component lies in
    [0, D] and the Euclidean norm is at most sqrt(K) * D.
    """
    mu = np.asarray(mu, dtype=float)
    a = np.asarray(alpha, dtype=float)
    if mu.ndim != 2:
        raise ValueError("mu must be a D x K matrix")
    D, K = mu.shape
    if D != weights.dim:
        raise ValueError(f"dimension mismatch: weights {weights.dim}, mu has {D} rows")
    if a.shape != (K,):
        raise ValueError(f"alpha must have length {K}")
    if not np.all(np.isfinite(mu)) or not np.all(np.isfinite(a)):
        raise ValueError("non-finite input")
    if abs(a.sum() - 1.0) > SIMPLEX_TOL or np.any(a < -SIMPLEX_TOL):
        raise ValueError("alpha is not a point of the probability simplex")
    pi = descending_permutation(mu @ a)
    return weights.w @ mu[pi, :]
