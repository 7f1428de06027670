"""Experiment orchestration: seeded multi-repetition bandit runs, regret
measurement at checkpoints, aggregation across repetitions, CSV/JSON output.

Regret notions, per run of length t against the optimal mixed policy value
g* = min_alpha G_w(mu @ alpha):

    regret        R(t)  = G_w(realized average cost)      - g*
    pseudo-regret Rbar(t) = G_w(mu @ mean played policy)  - g*

Pseudo-regret is nonnegative up to LP tolerance by optimality of g*; the
plain regret also carries sampling noise and may dip below zero.

Reproducibility: every random stream is a PCG64 generator keyed by a
SeedSequence entropy tuple --

    instance of repetition r   (master_seed, r, 0, instance_seed)
    algorithm a, repetition r  (master_seed, r, ALG_IDS[a])

so repetitions and algorithms are independent, reorderable and therefore
safe to run in parallel without affecting any output byte.
"""

from __future__ import annotations

import csv
import json
import os
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from . import __version__
from ._backend import BACKEND, get_kernels
from .env import (
    EmpiricalState,
    FiniteSupport,
    IndependentBernoulli,
    make_random_instance,
    true_means,
)
from .ggi import GgiWeights, geometric_weights, gini_weights, ggi_value
from .policies import (
    FixedArmLearner,
    MolpLearner,
    OgdeLearner,
    UniformLearner,
    sample_arm,
    step_size,
)
from .programs import optimal_mixed_policy

_FIXED_RE = re.compile(r"^fixed\((\d+)\)$")

# Stable stream ids per algorithm (independent of position in the config).
_BASE_ALG_IDS = {"mo-ogde": 1, "mo-lp": 2, "uniform": 3}
_FIXED_ID_BASE = 100

_KERNEL_MODES = {"mo-ogde": 0, "mo-lp": 1, "fixed": 2, "uniform": 3}


def parse_algorithm(name: str) -> tuple[str, int | None]:
    """Split an algorithm spec into (kind, fixed-arm index or None)."""
    if name in ("mo-ogde", "mo-lp", "uniform"):
        return name, None
    m = _FIXED_RE.match(name)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise ValueError(f"fixed-arm index must be >= 1 in {name!r}")
        return "fixed", k - 1
    raise ValueError(
        f"unknown algorithm {name!r}; expected mo-ogde, mo-lp, uniform or fixed(k)"
    )


def algorithm_stream_id(name: str) -> int:
    kind, arm = parse_algorithm(name)
    if kind == "fixed":
        return _FIXED_ID_BASE + arm + 1
    return _BASE_ALG_IDS[kind]


def default_checkpoints(T: int, points: int = 50) -> np.ndarray:
    """Geometric grid of ~`points` rounds from min(100, T) up to T."""
    lo = 100 if T >= 100 else 1
    grid = np.geomspace(lo, T, points)
    return np.unique(np.round(grid).astype(np.int64))


@dataclass
class ExperimentConfig:
    """Everything needed to reproduce one experiment.

    weights_spec: "geometric", "gini", or an explicit non-increasing list.
    instance_spec: {"kind": "random_bernoulli", "seed": s} regenerates a
    fresh instance per repetition; {"kind": "explicit", "arms": [...]}
    fixes the arms across repetitions (arm entries are either
    {"kind": "bernoulli", "p": [...]} or {"kind": "finite_support",
    "atoms": [{"x": [...], "prob": q}, ...]}).
    """

    K: int
    D: int
    T: int
    reps: int = 100
    delta: float = 0.1
    weights_spec: object = "geometric"
    instance_spec: dict = field(
        default_factory=lambda: {"kind": "random_bernoulli", "seed": 0}
    )
    algorithms: tuple = ("mo-ogde", "mo-lp")
    checkpoints: list | None = None
    master_seed: int = 0
    threads: int = 1

    def __post_init__(self):
        self.algorithms = tuple(self.algorithms)
        self.validate()

    def validate(self) -> None:
        if self.K < 2:
            raise ValueError(f"K must be >= 2, got {self.K}")
        if self.D < 1:
            raise ValueError(f"D must be >= 1, got {self.D}")
        if self.T < 1:
            raise ValueError(f"T must be >= 1, got {self.T}")
        if self.reps < 1:
            raise ValueError(f"reps must be >= 1, got {self.reps}")
        if not 0.0 < self.delta < 1.0:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")
        for name in self.algorithms:
            kind, arm = parse_algorithm(name)
            if kind == "fixed" and arm >= self.K:
                raise ValueError(f"{name!r} refers to an arm beyond K={self.K}")
        self.weights()  # validates the spec
        cps = self.resolved_checkpoints()
        if cps[0] < 1 or cps[-1] > self.T:
            raise ValueError("checkpoints must lie in [1, T]")
        if np.any(np.diff(cps) <= 0):
            raise ValueError("checkpoints must be strictly increasing")
        self._validate_instance_spec()

    def _validate_instance_spec(self) -> None:
        spec = self.instance_spec
        if not isinstance(spec, dict) or "kind" not in spec:
            raise ValueError("instance_spec must be a dict with a 'kind' field")
        kind = spec["kind"]
        if kind == "random_bernoulli":
            int(spec.get("seed", 0))
        elif kind == "explicit":
            arms = spec.get("arms")
            if not isinstance(arms, list) or len(arms) != self.K:
                raise ValueError(f"explicit instance_spec needs exactly K={self.K} arms")
            self._build_explicit_arms()
        else:
            raise ValueError(f"unknown instance kind {kind!r}")

    def weights(self) -> GgiWeights:
        spec = self.weights_spec
        if spec == "geometric":
            return geometric_weights(self.D)
        if spec == "gini":
            return gini_weights(self.D)
        if isinstance(spec, (list, tuple, np.ndarray)):
            w = GgiWeights(np.asarray(spec, dtype=float))
            if w.dim != self.D:
                raise ValueError(f"explicit weights must have length D={self.D}")
            return w
        raise ValueError(f"weights_spec must be 'geometric', 'gini' or a list, got {spec!r}")

    def resolved_checkpoints(self) -> np.ndarray:
        if self.checkpoints is None:
            return default_checkpoints(self.T)
        return np.asarray(self.checkpoints, dtype=np.int64)

    def _build_explicit_arms(self) -> list:
        arms = []
        for i, a in enumerate(self.instance_spec["arms"]):
            kind = a.get("kind")
            if kind == "bernoulli":
                arm = IndependentBernoulli(np.asarray(a["p"], dtype=float))
            elif kind == "finite_support":
                atoms = np.array([atom["x"] for atom in a["atoms"]], dtype=float)
                probs = np.array([atom["prob"] for atom in a["atoms"]], dtype=float)
                arm = FiniteSupport(atoms, probs)
            else:
                raise ValueError(f"arm {i}: unknown kind {kind!r}")
            if arm.dim != self.D:
                raise ValueError(f"arm {i}: dimension {arm.dim} != D={self.D}")
            arms.append(arm)
        return arms

    def instance(self, rep: int) -> list:
        """Arms for repetition `rep` (fresh for random specs, fixed otherwise)."""
        if self.instance_spec["kind"] == "random_bernoulli":
            seed = int(self.instance_spec.get("seed", 0))
            ss = np.random.SeedSequence((self.master_seed, rep, 0, seed))
            return make_random_instance(self.K, self.D, ss)
        return self._build_explicit_arms()

    def algorithm_rng(self, rep: int, name: str) -> np.random.Generator:
        ss = np.random.SeedSequence((self.master_seed, rep, algorithm_stream_id(name)))
        return np.random.Generator(np.random.PCG64(ss))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["algorithms"] = list(self.algorithms)
        d["checkpoints"] = None if self.checkpoints is None else [int(t) for t in self.checkpoints]
        if isinstance(d["weights_spec"], np.ndarray):
            d["weights_spec"] = [float(v) for v in d["weights_spec"]]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        return cls(**d)


def regret(weights: GgiWeights, cumulative_cost, t: int, ggi_star: float) -> float:
    """G_w of the average realized cost after t rounds, minus the optimum."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return ggi_value(weights, np.asarray(cumulative_cost, dtype=float) / t) - ggi_star


def pseudo_regret(weights: GgiWeights, mu, alpha_bar, ggi_star: float) -> float:
    """G_w(mu @ alpha_bar) minus the optimum; >= -1e-8 for any alpha_bar."""
    mu = np.asarray(mu, dtype=float)
    alpha_bar = np.asarray(alpha_bar, dtype=float)
    if mu.ndim != 2 or mu.shape[1] != alpha_bar.size:
        raise ValueError("mu must be D x K with K matching alpha_bar")
    return ggi_value(weights, mu @ alpha_bar) - ggi_star


@dataclass
class RunTrace:
    """Per-checkpoint record of one repetition of one algorithm."""

    checkpoints: np.ndarray
    pull_counts: np.ndarray      # (ncp, K)
    cumulative_cost: np.ndarray  # (ncp, D)
    alpha_bar: np.ndarray        # (ncp, K), mean played policy
    regret: np.ndarray           # (ncp,)
    pseudo_regret: np.ndarray    # (ncp,)
    floor_slack_min: np.ndarray  # (ncp,), min_t (min_k alpha_k - eta_t/K); inf for baselines


def _make_learner(name: str, K: int, D: int, weights: GgiWeights, delta: float):
    kind, arm = parse_algorithm(name)
    if kind == "mo-ogde":
        return OgdeLearner(K, D, weights, delta)
    if kind == "mo-lp":
        return MolpLearner(K, D, weights, delta)
    if kind == "uniform":
        return UniformLearner(K)
    return FixedArmLearner(arm, K)


def _run_generic(arms, weights, name, delta, T, checkpoints, rng):
    """Reference round loop over learner objects; handles any arm family.

    Consumes the same uniform stream as the compiled kernels on Bernoulli
    instances (one uniform for the arm draw, then the arm's own draws).
    """
    K = len(arms)
    D = arms[0].dim
    learner = _make_learner(name, K, D, weights, delta)
    audited = name in ("mo-ogde", "mo-lp")
    state = EmpiricalState(K, D)
    asum = np.zeros(K)
    ncp = len(checkpoints)
    out_pulls = np.zeros((ncp, K), dtype=np.int64)
    out_cum = np.zeros((ncp, D))
    out_asum = np.zeros((ncp, K))
    out_fsm = np.full(ncp, np.inf)
    fsm = np.inf
    cp_i = 0
    for t in range(1, T + 1):
        alpha = learner.policy(t, state.mu_hat)
        k = sample_arm(alpha, rng)
        x = arms[k].sample(rng)
        state.update(k, x)
        learner.observe(t, state.mu_hat)
        asum += alpha
        if audited and t > K:
            slack = float(alpha.min()) - step_size(K, delta, t) / K
            if slack < fsm:
                fsm = slack
        if cp_i < ncp and t == checkpoints[cp_i]:
            out_pulls[cp_i] = state.pull_counts
            out_cum[cp_i] = state.cumulative_cost
            out_asum[cp_i] = asum
            out_fsm[cp_i] = fsm
            cp_i += 1
    return {
        "pulls": out_pulls,
        "cum_cost": out_cum,
        "alpha_sum": out_asum,
        "floor_slack_min": out_fsm,
        "mu_hat": state.mu_hat,
    }


def run_single(
    arms,
    weights: GgiWeights,
    algorithm: str,
    delta: float,
    T: int,
    checkpoints,
    rng: np.random.Generator,
    mu: np.ndarray | None = None,
    ggi_star: float | None = None,
    kern=None,
) -> RunTrace:
    """One repetition of one algorithm; regret measured against the true means.

    Bernoulli-only instances run in the kernel backend; instances with
    finite-support arms fall back to the generic learner loop.
    """
    checkpoints = np.asarray(checkpoints, dtype=np.int64)
    if checkpoints.size == 0 or checkpoints[0] < 1 or checkpoints[-1] > T:
        raise ValueError("checkpoints must be non-empty and lie in [1, T]")
    if np.any(np.diff(checkpoints) <= 0):
        raise ValueError("checkpoints must be strictly increasing")
    if mu is None:
        mu = true_means(arms)
    if ggi_star is None:
        ggi_star = optimal_mixed_policy(weights, mu).ggi_star

    kind, arm = parse_algorithm(algorithm)
    all_bernoulli = all(isinstance(a, IndependentBernoulli) for a in arms)
    if all_bernoulli:
        if kern is None:
            kern = get_kernels()
        p = np.column_stack([a.p for a in arms])
        raw = kern.run_bernoulli(
            _KERNEL_MODES[kind],
            np.ascontiguousarray(p),
            weights.w,
            delta,
            int(T),
            checkpoints,
            rng,
            0 if arm is None else arm,
        )
    else:
        raw = _run_generic(arms, weights, algorithm, delta, int(T), checkpoints, rng)

    ncp = checkpoints.size
    alpha_bar = raw["alpha_sum"] / checkpoints[:, None]
    reg = np.empty(ncp)
    pse = np.empty(ncp)
    for i, t in enumerate(checkpoints):
        reg[i] = regret(weights, raw["cum_cost"][i], int(t), ggi_star)
        pse[i] = pseudo_regret(weights, mu, alpha_bar[i], ggi_star)
    return RunTrace(
        checkpoints=checkpoints,
        pull_counts=raw["pulls"],
        cumulative_cost=raw["cum_cost"],
        alpha_bar=alpha_bar,
        regret=reg,
        pseudo_regret=pse,
        floor_slack_min=raw["floor_slack_min"],
    )


@dataclass
class AggregateResult:
    """Mean and standard error of both regret notions per algorithm and
    checkpoint, over all repetitions."""

    config: ExperimentConfig
    checkpoints: np.ndarray
    regret_mean: dict
    regret_stderr: dict
    pseudo_regret_mean: dict
    pseudo_regret_stderr: dict
    abs_gap_mean: dict
    backend: str


def _stderr(samples: np.ndarray) -> np.ndarray:
    reps = samples.shape[0]
    if reps < 2:
        return np.zeros(samples.shape[1])
    return samples.std(axis=0, ddof=1) / np.sqrt(reps)


def run_experiment(cfg: ExperimentConfig, backend: str = "auto") -> AggregateResult:
    """Run every configured algorithm for cfg.reps repetitions.

    Within a repetition all algorithms see the same arms but consume
    independent cost/selection streams.  Random instances are regenerated
    per repetition.  The result is a pure function of the config.
    """
    kern = get_kernels(backend)
    weights = cfg.weights()
    cps = cfg.resolved_checkpoints()
    ncp = cps.size
    regrets = {a: np.empty((cfg.reps, ncp)) for a in cfg.algorithms}
    pseudos = {a: np.empty((cfg.reps, ncp)) for a in cfg.algorithms}

    def one_rep(rep: int):
        arms = cfg.instance(rep)
        mu = true_means(arms)
        ggi_star = optimal_mixed_policy(weights, mu).ggi_star
        out = {}
        for name in cfg.algorithms:
            rng = cfg.algorithm_rng(rep, name)
            trace = run_single(
                arms, weights, name, cfg.delta, cfg.T, cps, rng,
                mu=mu, ggi_star=ggi_star, kern=kern,
            )
            out[name] = (trace.regret, trace.pseudo_regret)
        return rep, out

    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(one_rep, range(cfg.reps)))
    else:
        rows = [one_rep(rep) for rep in range(cfg.reps)]
    for rep, out in rows:
        for name, (r, p) in out.items():
            regrets[name][rep] = r
            pseudos[name][rep] = p

    return AggregateResult(
        config=cfg,
        checkpoints=cps,
        regret_mean={a: regrets[a].mean(axis=0) for a in cfg.algorithms},
        regret_stderr={a: _stderr(regrets[a]) for a in cfg.algorithms},
        pseudo_regret_mean={a: pseudos[a].mean(axis=0) for a in cfg.algorithms},
        pseudo_regret_stderr={a: _stderr(pseudos[a]) for a in cfg.algorithms},
        abs_gap_mean={a: np.abs(regrets[a] - pseudos[a]).mean(axis=0) for a in cfg.algorithms},
        backend=BACKEND if backend == "auto" else backend,
    )


CSV_COLUMNS = [
    "algorithm",
    "checkpoint_t",
    "regret_mean",
    "regret_stderr",
    "pseudo_regret_mean",
    "pseudo_regret_stderr",
    "abs_gap_mean",
]


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def write_results(res: AggregateResult, out_dir: str) -> str:
    """Write results.csv (12 significant digits) and metadata.json.

    Returns the CSV path.  Output is a deterministic function of the
    result; no timestamps or environment data beyond the backend name.
    """
    try:
        os.makedirs(out_dir, exist_ok=True)
        csv_path = os.path.join(out_dir, "results.csv")
        with open(csv_path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(CSV_COLUMNS)
            for name in res.config.algorithms:
                for i, t in enumerate(res.checkpoints):
                    writer.writerow([
                        name,
                        int(t),
                        _fmt(res.regret_mean[name][i]),
                        _fmt(res.regret_stderr[name][i]),
                        _fmt(res.pseudo_regret_mean[name][i]),
                        _fmt(res.pseudo_regret_stderr[name][i]),
                        _fmt(res.abs_gap_mean[name][i]),
                    ])
        meta = {
            "config": res.config.to_dict(),
            "rng": {
                "generator": "PCG64",
                "streams": "SeedSequence((master_seed, rep, 0, instance_seed)) per instance; "
                           "SeedSequence((master_seed, rep, algorithm_id)) per run",
                "algorithm_ids": {a: algorithm_stream_id(a) for a in res.config.algorithms},
            },
            "backend": res.backend,
            "version": __version__,
        }
        with open(os.path.join(out_dir, "metadata.json"), "w") as f:
            json.dump(meta, f, indent=2, sort_keys=True)
            f.write("\n")
        return csv_path
    except OSError as e:
        raise OSError(f"failed writing results under {out_dir!r}: {e}") from e
