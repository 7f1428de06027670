"""Dense linear programming via a two-phase simplex method.

Solves  min c.z  s.t.  A z (<=, =, >=) b,  lb <= z <= ub  for problems of
modest size (hundreds of variables).  The front end rewrites the problem
into computational standard form -- finite lower bounds are shifted out,
upper-bounded free variables are flipped, doubly-unbounded variables are
split, finite upper bounds become extra rows, and slack/surplus columns
turn every row into an equality -- and hands the result to the backend
pivot engine (compiled when available).  Bland's pivoting rule is used
throughout, so the method cannot cycle; determinism follows from the fixed
column and row ordering.

Tolerances: pivot elements below 1e-10 are treated as zero and returned
points satisfy constraints within 1e-8 on well-scaled data.  Rows are
normalized by their largest absolute coefficient before solving; no other
presolve is attempted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from ._backend import kernels as _kern


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


LE, EQ, GE = -1, 0, 1

_REL_ALIASES = {
    "<=": LE, "le": LE, LE: LE,
    "=": EQ, "==": EQ, "eq": EQ, EQ: EQ,
    ">=": GE, "ge": GE, GE: GE,
}


def _normalize_relations(relations, m: int) -> np.ndarray:
    rel = np.empty(m, dtype=np.int64)
    if len(relations) != m:
        raise ValueError("one relation per constraint row required")
    for i, r in enumerate(relations):
        try:
            rel[i] = _REL_ALIASES[r]
        except (KeyError, TypeError):
            raise ValueError(f"unknown relation {r!r} in row {i}") from None
    return rel


@dataclass(frozen=True)
class LpProblem:
    """min objective . z subject to row relations and box bounds.

    relations entries may be "<=", "=", ">=" (or -1/0/+1).  Bounds default
    to z >= 0 with no upper bound; use -inf/+inf entries to relax them.
    """

    objective: np.ndarray
    A: np.ndarray
    relations: np.ndarray
    rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __init__(self, objective, A, relations, rhs, lower=None, upper=None):
        c = np.asarray(objective, dtype=float)
        A = np.asarray(A, dtype=float)
        b = np.asarray(rhs, dtype=float)
        if c.ndim != 1:
            raise ValueError("objective must be a vector")
        n = c.size
        if A.ndim != 2 or A.shape[1] != n:
            raise ValueError(f"A must be m x {n}")
        m = A.shape[0]
        if b.shape != (m,):
            raise ValueError(f"rhs must have length {m}")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(c)) and np.all(np.isfinite(b))):
            raise ValueError("A, objective and rhs must be finite (NaN/inf rejected)")
        lower = np.full(n, 0.0) if lower is None else np.asarray(lower, dtype=float)
        upper = np.full(n, np.inf) if upper is None else np.asarray(upper, dtype=float)
        if lower.shape != (n,) or upper.shape != (n,):
            raise ValueError("bounds must have one entry per variable")
        if np.any(np.isnan(lower)) or np.any(np.isnan(upper)):
            raise ValueError("bounds may be infinite but not NaN")
        if np.any(lower > upper):
            raise ValueError("lower bound exceeds upper bound")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "relations", _normalize_relations(relations, m))
        object.__setattr__(self, "rhs", b)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def n_vars(self) -> int:
        return self.objective.size

    @property
    def n_rows(self) -> int:
        return self.rhs.size


@dataclass(frozen=True)
class LpSolution:
    status: LpStatus
    z: np.ndarray | None = None
    objective_value: float | None = None


def solve(problem: LpProblem) -> LpSolution:
    """Solve the LP; statuses other than OPTIMAL carry no point."""
    n = problem.n_vars
    A = problem.A.copy()
    b = problem.rhs.copy()
    rel = problem.relations.copy()
    lo = problem.lower
    hi = problem.upper

    # Row normalization (scale each row by its largest |coefficient|).
    # Zero rows are decided immediately: 0.z rel b is either vacuous or
    # infeasible.
    keep = np.ones(A.shape[0], dtype=bool)
    for i in range(A.shape[0]):
        scale = np.max(np.abs(A[i])) if n else 0.0
        if scale > 0.0:
            A[i] /= scale
            b[i] /= scale
        else:
            ok = (
                abs(b[i]) <= 1e-12 if rel[i] == EQ
                else (b[i] >= -1e-12 if rel[i] == LE else b[i] <= 1e-12)
            )
            if not ok:
                return LpSolution(LpStatus.INFEASIBLE)
            keep[i] = False
    A, b, rel = A[keep], b[keep], rel[keep]

    # Variable substitutions to reach x >= 0 everywhere.
    # kind 0: z = lo + x        (finite lower bound)
    # kind 1: z = hi - x        (upper bound only)
    # kind 2: z = x_pos - x_neg (free)
    cols = []          # per variable: (kind, first standard-form column)
    offsets = np.zeros(n)
    extra_rows = []    # (std column, ub - lb) rows for doubly bounded vars
    nc = 0
    for j in range(n):
        if np.isfinite(lo[j]):
            cols.append((0, nc))
            offsets[j] = lo[j]
            if np.isfinite(hi[j]):
                extra_rows.append((nc, hi[j] - lo[j]))
            nc += 1
        elif np.isfinite(hi[j]):
            cols.append((1, nc))
            offsets[j] = hi[j]
            nc += 1
        else:
            cols.append((2, nc))
            nc += 2

    m0 = A.shape[0]
    m = m0 + len(extra_rows)
    n_slack = int(np.sum(rel != EQ)) + len(extra_rows)
    As = np.zeros((m, nc + n_slack))
    bs = np.empty(m)
    cs = np.zeros(nc + n_slack)

    b_shift = b - A @ offsets
    for j, (kind, col) in enumerate(cols):
        sign = -1.0 if kind == 1 else 1.0
        As[:m0, col] = sign * A[:, j]
        cs[col] = sign * problem.objective[j]
        if kind == 2:
            As[:m0, col + 1] = -A[:, j]
            cs[col + 1] = -problem.objective[j]
    bs[:m0] = b_shift
    slack = nc
    for i in range(m0):
        if rel[i] == LE:
            As[i, slack] = 1.0
            slack += 1
        elif rel[i] == GE:
            As[i, slack] = -1.0
            slack += 1
    for r, (col, ub_row) in enumerate(extra_rows):
        i = m0 + r
        As[i, col] = 1.0
        As[i, slack] = 1.0
        slack += 1
        bs[i] = ub_row

    status, x, _, _ = _kern.solve_standard_form(As, bs, cs)
    if status == _kern.ITER_LIMIT:
        raise RuntimeError("simplex iteration limit reached (should not happen with Bland's rule)")
    if status == _kern.INFEASIBLE:
        return LpSolution(LpStatus.INFEASIBLE)
    if status == _kern.UNBOUNDED:
        return LpSolution(LpStatus.UNBOUNDED)

    z = np.empty(n)
    for j, (kind, col) in enumerate(cols):
        if kind == 0:
            z[j] = offsets[j] + x[col]
        elif kind == 1:
            z[j] = offsets[j] - x[col]
        else:
            z[j] = x[col] - x[col + 1]
    return LpSolution(LpStatus.OPTIMAL, z, float(problem.objective @ z))
