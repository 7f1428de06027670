"""Multi-objective stochastic bandits optimizing the Generalized Gini Index.

The library provides the GGI itself (sorted, Lorenz and LP forms), exact
simplex projections, a dense LP solver, the MO-OGDE projected-gradient
learner and an LP-based per-round baseline, plus a reproducible experiment
harness with a CLI (`ggibandit simulate|ggi|solve-optimal`).
"""

__version__ = "0.1.0"

from ._backend import BACKEND, get_kernels
from .ggi import (
    GgiWeights,
    geometric_weights,
    ggi_policy_gradient,
    ggi_value,
    ggi_via_lorenz,
    gini_weights,
    lorenz_vector,
)
from .projection import project_simplex, project_truncated_simplex
from .lp import LpProblem, LpSolution, LpStatus, solve
from .programs import OptimalPolicyResult, ggi_lp_value, molp_step_policy, optimal_mixed_policy
from .env import (
    EmpiricalState,
    FiniteSupport,
    IndependentBernoulli,
    make_random_instance,
    true_means,
)
from .policies import (
    FixedArmLearner,
    MolpLearner,
    OgdeLearner,
    UniformLearner,
    ogde_update,
    sample_arm,
    step_size,
)
from .harness import (
    AggregateResult,
    ExperimentConfig,
    RunTrace,
    default_checkpoints,
    pseudo_regret,
    regret,
    run_experiment,
    run_single,
    write_results,
)

__all__ = [
    "BACKEND",
    "GgiWeights",
    "geometric_weights",
    "gini_weights",
    "ggi_value",
    "ggi_via_lorenz",
    "ggi_policy_gradient",
    "lorenz_vector",
    "project_simplex",
    "project_truncated_simplex",
    "LpProblem",
    "LpSolution",
    "LpStatus",
    "solve",
    "ggi_lp_value",
    "optimal_mixed_policy",
    "molp_step_policy",
    "OptimalPolicyResult",
    "IndependentBernoulli",
    "FiniteSupport",
    "EmpiricalState",
    "make_random_instance",
    "true_means",
    "OgdeLearner",
    "MolpLearner",
    "FixedArmLearner",
    "UniformLearner",
    "step_size",
    "ogde_update",
    "sample_arm",
    "ExperimentConfig",
    "AggregateResult",
    "RunTrace",
    "default_checkpoints",
    "regret",
    "pseudo_regret",
    "run_experiment",
    "run_single",
    "write_results",
    "get_kernels",
]
