"""Linear programs built around the GGI.

Three closely related programs share one encoding trick: for fixed x the
minimum of d*r + sum_j max(0, x_j - r) over r is the sum of the d largest
components of x, so

    G_w(x) = min  sum_d w'_d (d r_d + sum_j b_jd)
             s.t. r_d + b_jd >= x_j,  b_jd >= 0        (all j, d)

with the r_d free.  Replacing x by mu @ alpha and letting alpha range over
the probability simplex (optionally truncated at a floor eta/K) turns the
same program into a search for the GGI-optimal mixed policy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lp
from .ggi import GgiWeights

_INF = np.inf


@dataclass(frozen=True)
class OptimalPolicyResult:
    alpha_star: np.ndarray
    ggi_star: float
    lp_status: lp.LpStatus


def _check_means(mu) -> np.ndarray:
    mu = np.asarray(mu, dtype=float)
    if mu.ndim != 2:
        raise ValueError("arm means must form a D x K matrix")
    if not np.all(np.isfinite(mu)):
        raise ValueError("arm means must be finite")
    return mu


def _ggi_lp(weights: GgiWeights, mu: np.ndarray, eta: float) -> lp.LpProblem:
    """Program over variables [alpha (K) | r (D) | b (D*D, d-major)] with
    alpha floored at eta/K.  eta = 0 gives the plain simplex."""
    D, K = mu.shape
    nb = D * D
    n = K + D + nb
    rows = []
    rhs = []
    for d in range(D):
        for j in range(D):
            row = np.zeros(n)
            row[:K] = -mu[j]
            row[K + d] = 1.0
            row[K + D + d * D + j] = 1.0
            rows.append(row)
            rhs.append(0.0)
    srow = np.zeros(n)
    srow[:K] = 1.0
    rows.append(srow)
    rhs.append(1.0)

    c = np.zeros(n)
    drange = np.arange(1, D + 1, dtype=float)
    c[K:K + D] = weights.w_diff * drange
    for d in range(D):
        c[K + D + d * D:K + D + (d + 1) * D] = weights.w_diff[d]

    lower = np.concatenate([np.full(K, eta / K), np.full(D, -_INF), np.zeros(nb)])
    relations = [lp.GE] * (D * D) + [lp.EQ]
    return lp.LpProblem(c, np.array(rows), relations, np.array(rhs), lower=lower)


def ggi_lp_value(weights: GgiWeights, x) -> float:
    """G_w(x) as the optimal value of the r/b linear program.

    Independent of the sorting route; agrees with ggi.ggi_value within
    solver tolerance.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != weights.dim:
        raise ValueError("x must be a vector matching the weight dimension")
    if not np.all(np.isfinite(x)):
        raise ValueError("x must be finite")
    D = x.size
    nb = D * D
    n = D + nb
    rows = []
    for d in range(D):
        for j in range(D):
            row = np.zeros(n)
            row[d] = 1.0
            row[D + d * D + j] = 1.0
            rows.append(row)
    rhs = np.tile(x, D)
    c = np.zeros(n)
    c[:D] = weights.w_diff * np.arange(1, D + 1)
    for d in range(D):
        c[D + d * D:D + (d + 1) * D] = weights.w_diff[d]
    lower = np.concatenate([np.full(D, -_INF), np.zeros(nb)])
    problem = lp.LpProblem(c, np.array(rows), [lp.GE] * (D * D), rhs, lower=lower)
    sol = lp.solve(problem)
    if sol.status is not lp.LpStatus.OPTIMAL:
        raise RuntimeError(f"GGI value LP terminated with status {sol.status}")
    return float(sol.objective_value)


def optimal_mixed_policy(weights: GgiWeights, mu) -> OptimalPolicyResult:
    """Minimize G_w(mu @ alpha) over the probability simplex.

    The optimal value never exceeds the GGI of any single arm.  When the
    optimum is degenerate any optimal vertex may be returned.
    """
    mu = _check_means(mu)
    D, K = mu.shape
    if D != weights.dim:
        raise ValueError("weight dimension must match number of objectives")
    sol = lp.solve(_ggi_lp(weights, mu, 0.0))
    if sol.status is not lp.LpStatus.OPTIMAL:
        raise RuntimeError(f"optimal-policy LP terminated with status {sol.status}")
    return OptimalPolicyResult(sol.z[:K].copy(), float(sol.objective_value), sol.status)


def molp_step_policy(weights: GgiWeights, mu_hat, eta: float) -> np.ndarray:
    """Minimize G_w(mu_hat @ alpha) over the truncated simplex alpha_k >= eta/K.

    eta = 0 reduces to optimal_mixed_policy; eta = 1 forces the uniform
    policy (the truncated simplex is then a single point).
    """
    if not (0.0 <= eta <= 1.0):
        raise ValueError("eta must lie in [0, 1]")
    mu_hat = _check_means(mu_hat)
    D, K = mu_hat.shape
    if D != weights.dim:
        raise ValueError("weight dimension must match number of objectives")
    if eta == 1.0:
        return np.full(K, 1.0 / K)
    sol = lp.solve(_ggi_lp(weights, mu_hat, eta))
    if sol.status is not lp.LpStatus.OPTIMAL:
        raise RuntimeError(f"per-step policy LP terminated with status {sol.status}")
    return sol.z[:K].copy()
