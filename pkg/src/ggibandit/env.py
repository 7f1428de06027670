"""Stochastic arm environments with vector-valued costs in [0, 1]^D.

Two distribution families: independent Bernoulli components (the synthetic
benchmark family) and finite-support distributions over explicit atoms,
which allow dependence between cost components.

Sampling consumes a fixed number of uniforms per draw from the supplied
numpy Generator -- D for a Bernoulli arm, 1 for a finite-support arm -- so
streams are reproducible and independent of any internal restructuring.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class IndependentBernoulli:
    """Each cost component d is 1 with probability p[d], independently."""

    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("p must be a non-empty vector")
        if np.any(p < 0.0) or np.any(p > 1.0) or not np.all(np.isfinite(p)):
            raise ValueError("Bernoulli parameters must lie in [0, 1]")
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    @property
    def dim(self) -> int:
        return self.p.size

    @property
    def mean(self) -> np.ndarray:
        return self.p

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        return (rng.random(self.dim) < self.p).astype(float)


@dataclass(frozen=True)
class FiniteSupport:
    """Distribution over explicit cost vectors; probabilities sum to 1."""

    atoms: np.ndarray
    probs: np.ndarray
    _cum: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        atoms = np.asarray(self.atoms, dtype=float)
        probs = np.asarray(self.probs, dtype=float)
        if atoms.ndim != 2 or atoms.shape[0] == 0:
            raise ValueError("atoms must be an n x D matrix with n >= 1")
        if probs.shape != (atoms.shape[0],):
            raise ValueError("one probability per atom required")
        if np.any(atoms < 0.0) or np.any(atoms > 1.0):
            raise ValueError("atom cost vectors must lie in [0, 1]^D")
        if np.any(probs < 0.0) or abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError("probabilities must be nonnegative and sum to 1")
        atoms = atoms.copy()
        probs = probs.copy()
        atoms.setflags(write=False)
        probs.setflags(write=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "_cum", np.cumsum(probs))

    @property
    def dim(self) -> int:
        return self.atoms.shape[1]

    @property
    def mean(self) -> np.ndarray:
        return self.probs @ self.atoms

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        u = rng.random()
        i = int(np.searchsorted(self._cum, u, side="right"))
        if i >= len(self.probs):
            i = len(self.probs) - 1
        return self.atoms[i].copy()


ArmDistribution = IndependentBernoulli | FiniteSupport


def make_random_instance(K: int, D: int, seed) -> list[IndependentBernoulli]:
    """K Bernoulli arms with parameters drawn i.i.d. Uniform[0,1].

    The full D x K parameter matrix is drawn in one shot from a PCG64
    generator seeded with `seed`, so the instance is a pure function of
    (K, D, seed).
    """
    if K < 2:
        raise ValueError("K must be >= 2")
    if D < 1:
        raise ValueError("D must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    p = rng.random((D, K))
    return [IndependentBernoulli(p[:, k]) for k in range(K)]


def true_means(arms: list) -> np.ndarray:
    """Exact D x K matrix of expected cost vectors, one column per arm."""
    if not arms:
        raise ValueError("need at least one arm")
    dims = {a.dim for a in arms}
    if len(dims) != 1:
        raise ValueError("arms must share one cost dimension")
    return np.column_stack([a.mean for a in arms])


class EmpiricalState:
    """Running per-arm cost estimates for one bandit run.

    Tracks the pull counts T_k, the per-arm running mean matrix mu_hat
    (incremental update: mu += (x - mu) / T_k, stable for long runs) and
    the cumulative cost vector.  Single writer per run.
    """

    __slots__ = ("K", "D", "t", "mu_hat", "pull_counts", "cumulative_cost")

    def __init__(self, K: int, D: int):
        if K < 1 or D < 1:
            raise ValueError("K and D must be positive")
        self.K = K
        self.D = D
        self.t = 0
        self.mu_hat = np.zeros((D, K))
        self.pull_counts = np.zeros(K, dtype=np.int64)
        self.cumulative_cost = np.zeros(D)

    def update(self, k: int, x) -> None:
        """Record one sample x from arm k (0-based)."""
        if not 0 <= k < self.K:
            raise IndexError(f"arm index {k} out of range [0, {self.K})")
        x = np.asarray(x, dtype=float)
        if x.shape != (self.D,):
            raise ValueError(f"cost vector must have length {self.D}")
        self.t += 1
        self.pull_counts[k] += 1
        self.cumulative_cost += x
        self.mu_hat[:, k] += (x - self.mu_hat[:, k]) / self.pull_counts[k]
