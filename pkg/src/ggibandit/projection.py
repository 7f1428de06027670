"""Exact Euclidean projections onto the probability simplex and onto the
truncated simplex {alpha : sum(alpha) = 1, alpha_k >= beta/K}.

The simplex projection is the classical O(K log K) sort-and-threshold rule:
sort the input decreasingly, find the largest rho with
u_(rho) - (cumsum_(rho) - 1)/rho > 0, and clip every component at
tau = (cumsum_(rho) - 1)/rho.

The truncated case reduces affinely to the standard one: translating by
beta/K * 1 and rescaling by (1 - beta) preserves Euclidean projections, so
    P_trunc(x) = beta/K + (1 - beta) * P_simplex((x - beta/K) / (1 - beta)).
beta = 1 leaves a single feasible point, handled explicitly.
"""

from __future__ import annotations

import numpy as np


def project_simplex(x) -> np.ndarray:
    """argmin_{z in simplex} ||z - x||_2 for any finite vector x."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("input must be a non-empty 1-d vector")
    if not np.all(np.isfinite(v)):
        raise ValueError("input must be finite")
    u = np.sort(v)[::-1]
    cssv = np.cumsum(u) - 1.0
    rho = np.nonzero(u * np.arange(1, v.size + 1) > cssv)[0][-1]
    tau = cssv[rho] / (rho + 1.0)
    return np.maximum(v - tau, 0.0)


def project_truncated_simplex(x, beta: float) -> np.ndarray:
    """argmin ||z - x||_2 over {z : sum(z) = 1, z_k >= beta/K}, beta in [0, 1]."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("input must be a non-empty 1-d vector")
    if not (0.0 <= beta <= 1.0):
        raise ValueError("beta must lie in [0, 1]")
    K = v.size
    floor = beta / K
    if beta == 1.0:
        return np.full(K, floor)
    z = project_simplex((v - floor) / (1.0 - beta))
    return floor + (1.0 - beta) * z
