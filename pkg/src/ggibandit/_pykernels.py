"""Pure-Python fallback for the hot-loop kernels.

This module and ggibandit._ckernels expose the same functions and perform
the same floating-point operations in the same order, so a run produces
bit-identical results under either backend (on a given platform/libm).
Keep the two in lockstep: any change to arithmetic or ordering here must be
transcribed to the .pyx file and vice versa.

Kernels:
  solve_standard_form  -- two-phase dense simplex, Bland's rule, for
                          min c.x s.t. A x = b, x >= 0
  run_bernoulli        -- full bandit run (mo-ogde / mo-lp / fixed /
                          uniform) on independent-Bernoulli arms
  project_truncated    -- test hook for the in-kernel projection
  policy_gradient      -- test hook for the in-kernel GGI subgradient
"""

from __future__ import annotations

from math import log, sqrt

import numpy as np

PIVOT_TOL = 1e-10  # min |pivot element|
ENTER_TOL = 1e-9  # reduced-cost threshold for entering columns
FEAS_TOL = 1e-8  # phase-1 objective threshold for infeasibility
BLOCK = 4096  # rounds per RNG block (not observable in outputs)

OPTIMAL, INFEASIBLE, UNBOUNDED, ITER_LIMIT = 0, 1, 2, 3

MODE_OGDE, MODE_MOLP, MODE_FIXED, MODE_UNIFORM = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# dense two-phase simplex on a tableau stored as a list of row lists
# ---------------------------------------------------------------------------

def _pivot(T, nrows, width, r, col):
    prow = T[r]
    piv = prow[col]
    for j in range(width):
        prow[j] = prow[j] / piv
    prow[col] = 1.0
    for i in range(nrows):
        if i == r:
            continue
        row = T[i]
        f = row[col]
        if f != 0.0:
            for j in range(width):
                row[j] -= f * prow[j]
            row[col] = 0.0


def _pivot_loop(T, basis, m, n_enter, width, obj_row, max_iter, iters):
    """Bland's rule: enter lowest-index negative reduced cost, leave the
    min-ratio row breaking ties by lowest basic-variable index."""
    obj = T[obj_row]
    rhs = width - 1
    while True:
        col = -1
        for j in range(n_enter):
            if obj[j] < -ENTER_TOL:
                col = j
                break
        if col < 0:
            return OPTIMAL, iters
        leave = -1
        leave_var = 0
        best = 0.0
        for i in range(m):
            a = T[i][col]
            if a > PIVOT_TOL:
                ratio = T[i][rhs] / a
                if leave < 0 or ratio < best or (ratio == best and basis[i] < leave_var):
                    best = ratio
                    leave = i
                    leave_var = basis[i]
        if leave < 0:
            return UNBOUNDED, iters
        _pivot(T, m + 2, width, leave, col)
        basis[leave] = col
        iters += 1
        if iters >= max_iter:
            return ITER_LIMIT, iters


def _drive_out_artificials(T, basis, m, n, width):
    for i in range(m):
        if basis[i] >= n:
            row = T[i]
            col = -1
            for j in range(n):
                if row[j] > PIVOT_TOL or row[j] < -PIVOT_TOL:
                    col = j
                    break
            if col >= 0:
                _pivot(T, m + 2, width, i, col)
                basis[i] = col
            # else: redundant row; the artificial stays basic at level 0


def solve_standard_form(A, b, c, max_iter=None):
    """Solve min c.x  s.t.  A x = b, x >= 0 with a dense two-phase simplex.

    Returns (status, x, objective, iterations); x and objective are only
    meaningful when status == OPTIMAL.
    """
    A = np.ascontiguousarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    if A.ndim != 2:
        raise ValueError("A must be 2-d")
    m, n = A.shape
    if b.shape != (m,) or c.shape != (n,):
        raise ValueError("inconsistent LP dimensions")
    if max_iter is None:
        max_iter = 50 * (m + n) + 200

    width = n + m + 1
    rhs = width - 1
    T = [[0.0] * width for _ in range(m + 2)]
    Al = A.tolist()
    bl = b.tolist()
    cl = c.tolist()
    for i in range(m):
        row = T[i]
        ai = Al[i]
        bi = bl[i]
        if bi < 0.0:
            for j in range(n):
                row[j] = -ai[j]
            row[rhs] = -bi
        else:
            for j in range(n):
                row[j] = ai[j]
            row[rhs] = bi
        row[n + i] = 1.0
    obj2 = T[m]
    for j in range(n):
        obj2[j] = cl[j]
    obj1 = T[m + 1]
    for i in range(m):
        row = T[i]
        for j in range(n):
            obj1[j] -= row[j]
        obj1[rhs] -= row[rhs]

    basis = [n + i for i in range(m)]
    status, iters = _pivot_loop(T, basis, m, n, width, m + 1, max_iter, 0)
    if status == ITER_LIMIT:
        return ITER_LIMIT, None, 0.0, iters
    if status == UNBOUNDED:
        raise RuntimeError("phase-1 subproblem reported unbounded (numerical failure)")
    if -obj1[rhs] > FEAS_TOL:
        return INFEASIBLE, None, 0.0, iters
    _drive_out_artificials(T, basis, m, n, width)
    status, iters = _pivot_loop(T, basis, m, n, width, m, max_iter, iters)
    if status != OPTIMAL:
        return status, None, 0.0, iters

    x = [0.0] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][rhs]
    obj = 0.0
    for j in range(n):
        obj += cl[j] * x[j]
    return OPTIMAL, np.array(x), obj, iters


# ---------------------------------------------------------------------------
# in-kernel GGI pieces (buffers passed in; all loops in fixed order)
# ---------------------------------------------------------------------------

def _sort_desc_idx(y, idx, D):
    # stable insertion sort of indices by decreasing y
    for i in range(D):
        idx[i] = i
    for i in range(1, D):
        key = idx[i]
        kv = y[key]
        j = i - 1
        while j >= 0 and y[idx[j]] < kv:
            idx[j + 1] = idx[j]
            j -= 1
        idx[j + 1] = key


def _project_truncated(v, out, buf, K, beta):
    if beta == 1.0:
        f = beta / K
        for k in range(K):
            out[k] = f
        return
    floor = beta / K
    scale = 1.0 - beta
    for k in range(K):
        buf[k] = (v[k] - floor) / scale
    us = sorted(buf[:K], reverse=True)
    css = 0.0
    tau = 0.0
    for i in range(K):
        css += us[i]
        if us[i] * (i + 1) > css - 1.0:
            tau = (css - 1.0) / (i + 1)
    for k in range(K):
        z = buf[k] - tau
        if z < 0.0:
            z = 0.0
        out[k] = floor + scale * z


def project_truncated(x, beta):
    v = [float(t) for t in np.asarray(x, dtype=float)]
    K = len(v)
    out = [0.0] * K
    _project_truncated(v, out, [0.0] * K, K, float(beta))
    return np.array(out)


def _gradient(mu_hat, alpha, wl, y, idx, g, D, K):
    for d in range(D):
        acc = 0.0
        row = mu_hat[d]
        for k in range(K):
            acc += row[k] * alpha[k]
        y[d] = acc
    _sort_desc_idx(y, idx, D)
    for k in range(K):
        acc = 0.0
        for d in range(D):
            acc += wl[d] * mu_hat[idx[d]][k]
        g[k] = acc


def policy_gradient(w, mu, alpha):
    mu = np.asarray(mu, dtype=float)
    D, K = mu.shape
    mul = mu.tolist()
    wl = [float(t) for t in np.asarray(w, dtype=float)]
    al = [float(t) for t in np.asarray(alpha, dtype=float)]
    y = [0.0] * D
    idx = [0] * D
    g = [0.0] * K
    _gradient(mul, al, wl, y, idx, g, D, K)
    return np.array(g)


# ---------------------------------------------------------------------------
# per-round LP for the mo-lp learner, built directly in standard form
# ---------------------------------------------------------------------------

class _MolpWorkspace:
    """Preallocated tableau for min sum_d w'_d (d r_d + sum_j b_jd) over the
    truncated simplex, with alpha substituted as eta/K + a (a >= 0) and r
    split into rp - rn.  Column order: a (K) | rp,rn interleaved (2D) |
    b (D*D, d-major) | surplus (D*D) | artificial | rhs."""

    def __init__(self, D, K):
        self.D = D
        self.K = K
        self.m1 = D * D
        self.m = self.m1 + 1
        self.n_struct = K + 2 * D + D * D
        self.n_all = self.n_struct + self.m1
        self.width = self.n_all + 2
        self.T = [[0.0] * self.width for _ in range(self.m + 2)]
        self.basis = [0] * self.m
        self.s = [0.0] * D
        self.max_iter = 50 * (self.m + self.n_all) + 200

    def solve(self, mu_hat, w_diff, eta, alpha_out):
        D, K = self.D, self.K
        m1, m = self.m1, self.m
        n_all, width = self.n_all, self.width
        art = n_all
        rhs = width - 1
        T = self.T
        basis = self.basis
        s = self.s

        for i in range(m + 2):
            row = T[i]
            for j in range(width):
                row[j] = 0.0
        for j in range(D):
            acc = 0.0
            row = mu_hat[j]
            for k in range(K):
                acc += row[k]
            s[j] = acc
        bcol0 = K + 2 * D
        scol0 = self.n_struct
        for d in range(D):
            for j in range(D):
                q = d * D + j
                row = T[q]
                mj = mu_hat[j]
                for k in range(K):
                    row[k] = -mj[k]
                row[K + 2 * d] = 1.0
                row[K + 2 * d + 1] = -1.0
                row[bcol0 + q] = 1.0
                row[scol0 + q] = -1.0
                row[rhs] = (eta / K) * s[j]
                basis[q] = bcol0 + q
        eq = T[m1]
        for k in range(K):
            eq[k] = 1.0
        eq[art] = 1.0
        eq[rhs] = 1.0 - eta
        basis[m1] = art

        obj2 = T[m]
        for d in range(D):
            wd = w_diff[d]
            obj2[K + 2 * d] = wd * (d + 1)
            obj2[K + 2 * d + 1] = -wd * (d + 1)
            for j in range(D):
                obj2[bcol0 + d * D + j] = wd
        for d in range(D):
            wd = w_diff[d]
            for j in range(D):
                row = T[d * D + j]
                for col in range(width):
                    obj2[col] -= wd * row[col]
        obj1 = T[m + 1]
        for j in range(width):
            obj1[j] = -eq[j]
        obj1[art] = 0.0

        status, iters = _pivot_loop(T, basis, m, n_all, width, m + 1, self.max_iter, 0)
        if status != OPTIMAL or -obj1[rhs] > FEAS_TOL:
            raise RuntimeError("per-round policy LP failed in phase 1")
        _drive_out_artificials(T, basis, m, n_all, width)
        status, iters = _pivot_loop(T, basis, m, n_all, width, m, self.max_iter, iters)
        if status != OPTIMAL:
            raise RuntimeError("per-round policy LP failed in phase 2")

        f = eta / K
        for k in range(K):
            alpha_out[k] = f
        for i in range(m):
            bv = basis[i]
            if bv < K:
                alpha_out[bv] = f + T[i][rhs]


# ---------------------------------------------------------------------------
# full bandit run on independent-Bernoulli arms
# ---------------------------------------------------------------------------

def run_bernoulli(mode, p, w, delta, T, checkpoints, rng, fixed_arm=0):
    """Simulate one repetition of a policy on Bernoulli arms.

    mode: 0 = mo-ogde, 1 = mo-lp, 2 = fixed arm, 3 = uniform.
    p is the D x K success-probability matrix, w the GGI weight vector,
    checkpoints a strictly increasing int array of rounds <= T.  Consumes
    exactly (1 + D) uniforms per round from rng: one for the arm draw, D
    for the cost components.

    Returns a dict of per-checkpoint arrays: pulls (ncp, K), cum_cost
    (ncp, D), alpha_sum (ncp, K), floor_slack_min (ncp,), plus the final
    mu_hat (D, K).  floor_slack_min tracks, over all rounds K < t <= cp,
    the minimum of min_k alpha_k^(t) - eta_t / K (inf for non-learners).
    """
    p = np.asarray(p, dtype=float)
    D, K = p.shape
    wv = np.asarray(w, dtype=float)
    cps = [int(v) for v in np.asarray(checkpoints)]
    ncp = len(cps)
    learner = mode == MODE_OGDE or mode == MODE_MOLP
    if learner and K < 2:
        raise ValueError("learners require K >= 2")

    out_pulls = np.zeros((ncp, K), dtype=np.int64)
    out_cum = np.zeros((ncp, D))
    out_asum = np.zeros((ncp, K))
    out_fsm = np.full(ncp, np.inf)

    pl = p.tolist()
    wl = wv.tolist()
    w_diff = [wl[d] - (wl[d + 1] if d + 1 < D else 0.0) for d in range(D)]

    mu_hat = [[0.0] * K for _ in range(D)]
    counts = [0] * K
    cum = [0.0] * D
    asum = [0.0] * K
    cur = [0.0] * K
    alpha = [0.0] * K
    if mode == MODE_FIXED:
        alpha[fixed_arm] = 1.0
    elif mode == MODE_UNIFORM:
        for k in range(K):
            alpha[k] = 1.0 / K
    y = [0.0] * D
    idx = [0] * D
    g = [0.0] * K
    v = [0.0] * K
    pbuf = [0.0] * K
    ws = _MolpWorkspace(D, K) if mode == MODE_MOLP else None

    if learner:
        coef = sqrt(2.0) / (1.0 - 1.0 / sqrt(K))
        lnterm = log(2.0 / delta)
    fsm = float("inf")
    eta_t = 0.0
    t = 0
    cp_i = 0
    while t < T:
        nblk = BLOCK if T - t > BLOCK else T - t
        Ul = rng.random((nblk, 1 + D)).tolist()
        for i in range(nblk):
            t += 1
            urow = Ul[i]
            if learner and t <= K:
                for k in range(K):
                    cur[k] = 0.0
                cur[t - 1] = 1.0
            else:
                for k in range(K):
                    cur[k] = alpha[k]
            u = urow[0]
            arm = K - 1
            acc = 0.0
            for k in range(K):
                acc += cur[k]
                if u < acc:
                    arm = k
                    break
            counts[arm] += 1
            ck = counts[arm]
            for d in range(D):
                x = 1.0 if urow[1 + d] < pl[d][arm] else 0.0
                cum[d] += x
                mu_hat[d][arm] += (x - mu_hat[d][arm]) / ck
            for k in range(K):
                asum[k] += cur[k]

            if learner and t > K:
                raw = coef * sqrt(lnterm / t)
                eta_t = raw if raw < 1.0 else 1.0
                mn = cur[0]
                for k in range(1, K):
                    if cur[k] < mn:
                        mn = cur[k]
                slack = mn - eta_t / K
                if slack < fsm:
                    fsm = slack

            if mode == MODE_OGDE:
                if t == K:
                    for k in range(K):
                        alpha[k] = 1.0 / K
                elif t > K:
                    _gradient(mu_hat, alpha, wl, y, idx, g, D, K)
                    for k in range(K):
                        v[k] = alpha[k] - eta_t * g[k]
                    _project_truncated(v, alpha, pbuf, K, eta_t)
            elif mode == MODE_MOLP:
                if t >= K:
                    tn = t + 1
                    raw = coef * sqrt(lnterm / tn)
                    eta_n = raw if raw < 1.0 else 1.0
                    if eta_n == 1.0:
                        for k in range(K):
                            alpha[k] = 1.0 / K
                    else:
                        ws.solve(mu_hat, w_diff, eta_n, alpha)

            if cp_i < ncp and t == cps[cp_i]:
                for k in range(K):
                    out_pulls[cp_i, k] = counts[k]
                    out_asum[cp_i, k] = asum[k]
                for d in range(D):
                    out_cum[cp_i, d] = cum[d]
                out_fsm[cp_i] = fsm
                cp_i += 1

    return {
        "pulls": out_pulls,
        "cum_cost": out_cum,
        "alpha_sum": out_asum,
        "floor_slack_min": out_fsm,
        "mu_hat": np.array(mu_hat),
    }
