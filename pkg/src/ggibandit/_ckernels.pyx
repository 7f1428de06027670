# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot-loop kernels.

Twin of ggibandit._pykernels: same functions, same floating-point
operations in the same order, so results are bit-identical across the two
backends.  Any arithmetic change here must be transcribed to the pure
module and vice versa.
"""

from libc.math cimport sqrt, log, INFINITY

import numpy as np

PIVOT_TOL = 1e-10
ENTER_TOL = 1e-9
FEAS_TOL = 1e-8
BLOCK = 4096

OPTIMAL, INFEASIBLE, UNBOUNDED, ITER_LIMIT = 0, 1, 2, 3

MODE_OGDE, MODE_MOLP, MODE_FIXED, MODE_UNIFORM = 0, 1, 2, 3

cdef double _PIVOT_TOL = 1e-10
cdef double _ENTER_TOL = 1e-9
cdef double _FEAS_TOL = 1e-8
cdef long _BLOCK = 4096

cdef int _OPTIMAL = 0
cdef int _INFEASIBLE = 1
cdef int _UNBOUNDED = 2
cdef int _ITER_LIMIT = 3


# ---------------------------------------------------------------------------
# dense two-phase simplex
# ---------------------------------------------------------------------------

cdef void _pivot(double[:, ::1] T, long nrows, long width, long r, long col) noexcept nogil:
    cdef long i, j
    cdef double piv = T[r, col]
    cdef double f
    for j in range(width):
        T[r, j] = T[r, j] / piv
    T[r, col] = 1.0
    for i in range(nrows):
        if i == r:
            continue
        f = T[i, col]
        if f != 0.0:
            for j in range(width):
                T[i, j] -= f * T[r, j]
            T[i, col] = 0.0


cdef int _pivot_loop(double[:, ::1] T, long[::1] basis, long m, long n_enter,
                     long width, long obj_row, long max_iter, long* iters) noexcept nogil:
    cdef long col, i, j, leave, leave_var, rhs = width - 1
    cdef double a, ratio, best
    while True:
        col = -1
        for j in range(n_enter):
            if T[obj_row, j] < -_ENTER_TOL:
                col = j
                break
        if col < 0:
            return _OPTIMAL
        leave = -1
        leave_var = 0
        best = 0.0
        for i in range(m):
            a = T[i, col]
            if a > _PIVOT_TOL:
                ratio = T[i, rhs] / a
                if leave < 0 or ratio < best or (ratio == best and basis[i] < leave_var):
                    best = ratio
                    leave = i
                    leave_var = basis[i]
        if leave < 0:
            return _UNBOUNDED
        _pivot(T, m + 2, width, leave, col)
        basis[leave] = col
        iters[0] += 1
        if iters[0] >= max_iter:
            return _ITER_LIMIT


cdef void _drive_out_artificials(double[:, ::1] T, long[::1] basis, long m,
                                 long n, long width) noexcept nogil:
    cdef long i, j, col
    for i in range(m):
        if basis[i] >= n:
            col = -1
            for j in range(n):
                if T[i, j] > _PIVOT_TOL or T[i, j] < -_PIVOT_TOL:
                    col = j
                    break
            if col >= 0:
                _pivot(T, m + 2, width, i, col)
                basis[i] = col


def solve_standard_form(A, b, c, max_iter=None):
    """Solve min c.x s.t. A x = b, x >= 0; see the pure twin for details."""
    cdef const double[:, ::1] Av = np.ascontiguousarray(A, dtype=np.float64)
    cdef const double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef const double[::1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef long m = Av.shape[0], n = Av.shape[1]
    if bv.shape[0] != m or cv.shape[0] != n:
        raise ValueError("inconsistent LP dimensions")
    cdef long cap
    if max_iter is None:
        cap = 50 * (m + n) + 200
    else:
        cap = <long> max_iter

    cdef long width = n + m + 1
    cdef long rhs = width - 1
    T_arr = np.zeros((m + 2, width))
    basis_arr = np.empty(m, dtype=np.int64)
    cdef double[:, ::1] T = T_arr
    cdef long[::1] basis = basis_arr
    cdef long i, j
    cdef double bi
    for i in range(m):
        bi = bv[i]
        if bi < 0.0:
            for j in range(n):
                T[i, j] = -Av[i, j]
            T[i, rhs] = -bi
        else:
            for j in range(n):
                T[i, j] = Av[i, j]
            T[i, rhs] = bi
        T[i, n + i] = 1.0
    for j in range(n):
        T[m, j] = cv[j]
    for i in range(m):
        for j in range(n):
            T[m + 1, j] -= T[i, j]
        T[m + 1, rhs] -= T[i, rhs]
    for i in range(m):
        basis[i] = n + i

    cdef long iters = 0
    cdef int status
    with nogil:
        status = _pivot_loop(T, basis, m, n, width, m + 1, cap, &iters)
    if status == _ITER_LIMIT:
        return ITER_LIMIT, None, 0.0, iters
    if status == _UNBOUNDED:
        raise RuntimeError("phase-1 subproblem reported unbounded (numerical failure)")
    if -T[m + 1, rhs] > _FEAS_TOL:
        return INFEASIBLE, None, 0.0, iters
    with nogil:
        _drive_out_artificials(T, basis, m, n, width)
        status = _pivot_loop(T, basis, m, n, width, m, cap, &iters)
    if status != _OPTIMAL:
        return status, None, 0.0, iters

    x_arr = np.zeros(n)
    cdef double[::1] x = x_arr
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i, rhs]
    cdef double obj = 0.0
    for j in range(n):
        obj += cv[j] * x[j]
    return OPTIMAL, x_arr, obj, iters


# ---------------------------------------------------------------------------
# in-kernel GGI pieces
# ---------------------------------------------------------------------------

cdef void _sort_desc_idx(const double[::1] y, long[::1] idx, long D) noexcept nogil:
    cdef long i, j, key
    cdef double kv
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


cdef void _project_truncated(const double[::1] v, double[::1] out, double[::1] buf,
                             double[::1] sbuf, long K, double beta) noexcept nogil:
    cdef long k, i, j
    cdef double f, floor, scale, css, tau, z, key
    if beta == 1.0:
        f = beta / K
        for k in range(K):
            out[k] = f
        return
    floor = beta / K
    scale = 1.0 - beta
    for k in range(K):
        buf[k] = (v[k] - floor) / scale
        sbuf[k] = buf[k]
    # descending insertion sort of the values
    for i in range(1, K):
        key = sbuf[i]
        j = i - 1
        while j >= 0 and sbuf[j] < key:
            sbuf[j + 1] = sbuf[j]
            j -= 1
        sbuf[j + 1] = key
    css = 0.0
    tau = 0.0
    for i in range(K):
        css += sbuf[i]
        if sbuf[i] * (i + 1) > css - 1.0:
            tau = (css - 1.0) / (i + 1)
    for k in range(K):
        z = buf[k] - tau
        if z < 0.0:
            z = 0.0
        out[k] = floor + scale * z


def project_truncated(x, beta):
    v_arr = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] v = v_arr
    cdef long K = v.shape[0]
    out_arr = np.empty(K)
    buf_arr = np.empty(K)
    sbuf_arr = np.empty(K)
    cdef double[::1] out = out_arr
    cdef double[::1] buf = buf_arr
    cdef double[::1] sbuf = sbuf_arr
    _project_truncated(v, out, buf, sbuf, K, <double> beta)
    return out_arr


cdef void _gradient(const double[:, ::1] mu_hat, const double[::1] alpha, const double[::1] wl,
                    double[::1] y, long[::1] idx, double[::1] g, long D, long K) noexcept nogil:
    cdef long d, k
    cdef double acc
    for d in range(D):
        acc = 0.0
        for k in range(K):
            acc += mu_hat[d, k] * alpha[k]
        y[d] = acc
    _sort_desc_idx(y, idx, D)
    for k in range(K):
        acc = 0.0
        for d in range(D):
            acc += wl[d] * mu_hat[idx[d], k]
        g[k] = acc


def policy_gradient(w, mu, alpha):
    mu_arr = np.ascontiguousarray(mu, dtype=np.float64)
    cdef const double[:, ::1] muv = mu_arr
    cdef long D = muv.shape[0], K = muv.shape[1]
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef const double[::1] av = np.ascontiguousarray(alpha, dtype=np.float64)
    y_arr = np.empty(D)
    idx_arr = np.empty(D, dtype=np.int64)
    g_arr = np.empty(K)
    cdef double[::1] y = y_arr
    cdef long[::1] idx = idx_arr
    cdef double[::1] g = g_arr
    _gradient(muv, av, wv, y, idx, g, D, K)
    return g_arr


# ---------------------------------------------------------------------------
# per-round LP for the mo-lp learner
# ---------------------------------------------------------------------------

cdef int _molp_solve(double[:, ::1] T, long[::1] basis, double[::1] s,
                     const double[:, ::1] mu_hat, const double[::1] w_diff, double eta,
                     double[::1] alpha_out, long D, long K, long max_iter) noexcept nogil:
    cdef long m1 = D * D
    cdef long m = m1 + 1
    cdef long n_struct = K + 2 * D + D * D
    cdef long n_all = n_struct + m1
    cdef long width = n_all + 2
    cdef long art = n_all
    cdef long rhs = width - 1
    cdef long bcol0 = K + 2 * D
    cdef long scol0 = n_struct
    cdef long i, j, d, k, q, col, bv
    cdef double acc, wd, f
    cdef long iters = 0
    cdef int status

    for i in range(m + 2):
        for j in range(width):
            T[i, j] = 0.0
    for j in range(D):
        acc = 0.0
        for k in range(K):
            acc += mu_hat[j, k]
        s[j] = acc
    for d in range(D):
        for j in range(D):
            q = d * D + j
            for k in range(K):
                T[q, k] = -mu_hat[j, k]
            T[q, K + 2 * d] = 1.0
            T[q, K + 2 * d + 1] = -1.0
            T[q, bcol0 + q] = 1.0
            T[q, scol0 + q] = -1.0
            T[q, rhs] = (eta / K) * s[j]
            basis[q] = bcol0 + q
    for k in range(K):
        T[m1, k] = 1.0
    T[m1, art] = 1.0
    T[m1, rhs] = 1.0 - eta
    basis[m1] = art

    for d in range(D):
        wd = w_diff[d]
        T[m, K + 2 * d] = wd * (d + 1)
        T[m, K + 2 * d + 1] = -wd * (d + 1)
        for j in range(D):
            T[m, bcol0 + d * D + j] = wd
    for d in range(D):
        wd = w_diff[d]
        for j in range(D):
            q = d * D + j
            for col in range(width):
                T[m, col] -= wd * T[q, col]
    for j in range(width):
        T[m + 1, j] = -T[m1, j]
    T[m + 1, art] = 0.0

    status = _pivot_loop(T, basis, m, n_all, width, m + 1, max_iter, &iters)
    if status != _OPTIMAL or -T[m + 1, rhs] > _FEAS_TOL:
        return 1
    _drive_out_artificials(T, basis, m, n_all, width)
    status = _pivot_loop(T, basis, m, n_all, width, m, max_iter, &iters)
    if status != _OPTIMAL:
        return 2

    f = eta / K
    for k in range(K):
        alpha_out[k] = f
    for i in range(m):
        bv = basis[i]
        if bv < K:
            alpha_out[bv] = f + T[i, rhs]
    return 0


# ---------------------------------------------------------------------------
# full bandit run on independent-Bernoulli arms
# ---------------------------------------------------------------------------

def run_bernoulli(mode, p, w, delta, T, checkpoints, rng, fixed_arm=0):
    """Simulate one repetition; see the pure twin for the full contract."""
    p_arr = np.ascontiguousarray(p, dtype=np.float64)
    cdef const double[:, ::1] pv = p_arr
    cdef long D = pv.shape[0], K = pv.shape[1]
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef const long[::1] cps = np.ascontiguousarray(checkpoints, dtype=np.int64)
    cdef long ncp = cps.shape[0]
    cdef long horizon = <long> T
    cdef int md = <int> mode
    cdef long arm0 = <long> fixed_arm
    cdef double dlt = <double> delta
    cdef bint learner = md == 0 or md == 1
    if learner and K < 2:
        raise ValueError("learners require K >= 2")

    out_pulls_arr = np.zeros((ncp, K), dtype=np.int64)
    out_cum_arr = np.zeros((ncp, D))
    out_asum_arr = np.zeros((ncp, K))
    out_fsm_arr = np.full(ncp, np.inf)
    cdef long[:, ::1] out_pulls = out_pulls_arr
    cdef double[:, ::1] out_cum = out_cum_arr
    cdef double[:, ::1] out_asum = out_asum_arr
    cdef double[::1] out_fsm = out_fsm_arr

    w_diff_arr = np.empty(D)
    cdef double[::1] w_diff = w_diff_arr
    cdef long d
    for d in range(D):
        w_diff[d] = wv[d] - (wv[d + 1] if d + 1 < D else 0.0)

    mu_hat_arr = np.zeros((D, K))
    cdef double[:, ::1] mu_hat = mu_hat_arr
    counts_arr = np.zeros(K, dtype=np.int64)
    cdef long[::1] counts = counts_arr
    cum_arr = np.zeros(D)
    cdef double[::1] cum = cum_arr
    asum_arr = np.zeros(K)
    cdef double[::1] asum = asum_arr
    cur_arr = np.zeros(K)
    cdef double[::1] cur = cur_arr
    alpha_arr = np.zeros(K)
    cdef double[::1] alpha = alpha_arr
    cdef long k
    if md == 2:
        alpha[arm0] = 1.0
    elif md == 3:
        for k in range(K):
            alpha[k] = 1.0 / K
    y_arr = np.empty(D)
    cdef double[::1] y = y_arr
    idx_arr = np.empty(D, dtype=np.int64)
    cdef long[::1] idx = idx_arr
    g_arr = np.empty(K)
    cdef double[::1] g = g_arr
    v_arr = np.empty(K)
    cdef double[::1] v = v_arr
    pbuf_arr = np.empty(K)
    cdef double[::1] pbuf = pbuf_arr
    psort_arr = np.empty(K)
    cdef double[::1] psort = psort_arr

    # mo-lp workspace (allocated only when needed)
    cdef long m1 = D * D, mrows = m1 + 1
    cdef long n_all = K + 2 * D + 2 * D * D
    cdef long lp_cap = 50 * (mrows + n_all) + 200
    cdef double[:, ::1] lpT = None
    cdef long[::1] lp_basis = None
    cdef double[::1] lp_s = None
    if md == 1:
        lpT = np.zeros((mrows + 2, n_all + 2))
        lp_basis = np.zeros(mrows, dtype=np.int64)
        lp_s = np.zeros(D)

    cdef double coef = 0.0, lnterm = 0.0
    if learner:
        coef = sqrt(2.0) / (1.0 - 1.0 / sqrt(<double> K))
        lnterm = log(2.0 / dlt)
    cdef double fsm = INFINITY
    cdef double eta_t = 0.0, eta_n, raw, u, acc, mn, slack, x, ck
    cdef long t = 0, cp_i = 0, i, nblk, armk, tn
    cdef int lp_err = 0
    cdef const double[:, ::1] Ub

    while t < horizon:
        nblk = _BLOCK if horizon - t > _BLOCK else horizon - t
        Ub = rng.random((nblk, 1 + D))
        with nogil:
            for i in range(nblk):
                t += 1
                if learner and t <= K:
                    for k in range(K):
                        cur[k] = 0.0
                    cur[t - 1] = 1.0
                else:
                    for k in range(K):
                        cur[k] = alpha[k]
                u = Ub[i, 0]
                armk = K - 1
                acc = 0.0
                for k in range(K):
                    acc += cur[k]
                    if u < acc:
                        armk = k
                        break
                counts[armk] += 1
                ck = <double> counts[armk]
                for d in range(D):
                    x = 1.0 if Ub[i, 1 + d] < pv[d, armk] else 0.0
                    cum[d] += x
                    mu_hat[d, armk] += (x - mu_hat[d, armk]) / ck
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

                if md == 0:
                    if t == K:
                        for k in range(K):
                            alpha[k] = 1.0 / K
                    elif t > K:
                        _gradient(mu_hat, alpha, wv, y, idx, g, D, K)
                        for k in range(K):
                            v[k] = alpha[k] - eta_t * g[k]
                        _project_truncated(v, alpha, pbuf, psort, K, eta_t)
                elif md == 1:
                    if t >= K:
                        tn = t + 1
                        raw = coef * sqrt(lnterm / tn)
                        eta_n = raw if raw < 1.0 else 1.0
                        if eta_n == 1.0:
                            for k in range(K):
                                alpha[k] = 1.0 / K
                        else:
                            lp_err = _molp_solve(lpT, lp_basis, lp_s, mu_hat, w_diff,
                                                 eta_n, alpha, D, K, lp_cap)
                            if lp_err != 0:
                                break

                if cp_i < ncp and t == cps[cp_i]:
                    for k in range(K):
                        out_pulls[cp_i, k] = counts[k]
                        out_asum[cp_i, k] = asum[k]
                    for d in range(D):
                        out_cum[cp_i, d] = cum[d]
                    out_fsm[cp_i] = fsm
                    cp_i += 1
        if lp_err != 0:
            raise RuntimeError("per-round policy LP failed")

    return {
        "pulls": out_pulls_arr,
        "cum_cost": out_cum_arr,
        "alpha_sum": out_asum_arr,
        "floor_slack_min": out_fsm_arr,
        "mu_hat": mu_hat_arr,
    }
