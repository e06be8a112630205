# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-round simulation loop.

Mirror of `_kernel_py.simulate`, expression for expression, so both backends
produce bit-identical trajectories.  Any semantic change here must be made in
the pure-Python fallback as well.
"""

from libc.math cimport INFINITY, log, sqrt

import numpy as np

BACKEND = "cython"

POLICY_TRANSFER = 0
POLICY_AST_UCB = 1
POLICY_UNIFORM = 2

SCHEDULE_THEORY = 0
SCHEDULE_LINEARIZED = 1


cdef inline double _delta_at(int schedule_kind, double epsilon, long long t) noexcept:
    cdef double lt = log(<double> t)
    if schedule_kind == SCHEDULE_THEORY:
        if lt > 1.0:
            return lt + 3.0 * log(lt)
        return lt
    return (1.0 + epsilon) * lt


cdef inline double _transfer_index(
    double alpha, double mu, double beta, double shifted, double delta
) noexcept:
    cdef double root_a, root_b, gap, disc
    if alpha == 0.0 and beta == 0.0:
        return INFINITY
    if beta == 0.0:
        return mu + sqrt(delta / alpha)
    if alpha == 0.0:
        return shifted + sqrt(delta / beta)
    root_b = sqrt(delta / beta)
    if mu >= shifted + root_b:
        return shifted + root_b
    root_a = sqrt(delta / alpha)
    if shifted >= mu + root_a:
        return mu + root_a
    gap = mu - shifted
    disc = (alpha + beta) * delta - alpha * beta * gap * gap
    if disc < 0.0:
        disc = 0.0
    return (alpha * mu + beta * shifted + sqrt(disc)) / (alpha + beta)


def simulate(
    double[::1] means,
    double sigma,
    long long[::1] n_prior,
    double[::1] mu_hat_prior,
    double[::1] l_bound,
    double sigma_prior,
    int policy,
    double shift_l,
    int schedule_kind,
    double epsilon,
    long long horizon,
    double[::1] z,
    double[::1] u,
    long long[::1] checkpoints,
    int track_arm,
):
    """Run one bandit trajectory.

    z and u are pre-drawn standard normals / uniforms, one per round; one
    entry of each is consumed every round so the stream position never
    depends on the realized path.  Returns (cum_regret_at_checkpoints,
    final_pulls, tracked_arm_index_at_checkpoints); cumulative pseudo-regret
    is reconstructed from pull counts at each checkpoint, making the
    regret/pull-count identity exact.
    """
    cdef long long K = means.shape[0]
    cdef long long n_check = checkpoints.shape[0]
    cdef long long t, ci, a, arm, total
    cdef int m, j
    cdef double mu_star, delta, best, val, reward, u_t, pooled
    cdef double two_sigma2 = 2.0 * sigma * sigma

    pulls_arr = np.zeros(K, dtype=np.int64)
    mean_arr = np.zeros(K, dtype=np.float64)
    beta_arr = np.empty(K, dtype=np.float64)
    shifted_arr = np.empty(K, dtype=np.float64)
    gaps_arr = np.empty(K, dtype=np.float64)
    index_arr = np.empty(K, dtype=np.float64)
    cum_out = np.empty(n_check, dtype=np.float64)
    tracked_out = np.empty(n_check, dtype=np.float64)

    cdef long long[::1] pulls = pulls_arr
    cdef double[::1] mean = mean_arr
    cdef double[::1] beta = beta_arr
    cdef double[::1] shifted = shifted_arr
    cdef double[::1] gaps = gaps_arr
    cdef double[::1] index = index_arr
    cdef double[::1] cum = cum_out
    cdef double[::1] tracked = tracked_out

    mu_star = means[0]
    for a in range(1, K):
        if means[a] > mu_star:
            mu_star = means[a]
    for a in range(K):
        gaps[a] = mu_star - means[a]
        beta[a] = n_prior[a] / (2.0 * sigma_prior * sigma_prior)
        shifted[a] = mu_hat_prior[a] + l_bound[a]

    ci = 0
    for t in range(1, horizon + 1):
        delta = _delta_at(schedule_kind, epsilon, t)
        u_t = u[t - 1]

        if policy == POLICY_UNIFORM:
            for a in range(K):
                index[a] = 0.0
        elif policy == POLICY_TRANSFER:
            for a in range(K):
                index[a] = _transfer_index(
                    pulls[a] / two_sigma2, mean[a], beta[a], shifted[a], delta
                )
        else:
            for a in range(K):
                total = n_prior[a] + pulls[a]
                if total == 0:
                    index[a] = INFINITY
                else:
                    pooled = (
                        n_prior[a] * mu_hat_prior[a] + pulls[a] * mean[a]
                    ) / total
                    index[a] = pooled + shift_l + sqrt(
                        two_sigma2 * delta / total
                    )

        if ci < n_check and t == checkpoints[ci]:
            tracked[ci] = index[track_arm]

        # Unpulled arms with no prior data are forced first, ascending order.
        arm = -1
        if policy == POLICY_UNIFORM:
            arm = <long long> (u_t * K)
            if arm > K - 1:
                arm = K - 1
        else:
            for a in range(K):
                if pulls[a] == 0 and n_prior[a] == 0:
                    arm = a
                    break
        if arm < 0:
            best = index[0]
            for a in range(1, K):
                if index[a] > best:
                    best = index[a]
            m = 0
            for a in range(K):
                if index[a] == best:
                    m += 1
            if m == 1:
                for a in range(K):
                    if index[a] == best:
                        arm = a
                        break
            else:
                j = <int> (u_t * m)
                if j > m - 1:
                    j = m - 1
                for a in range(K):
                    if index[a] == best:
                        if j == 0:
                            arm = a
                            break
                        j -= 1

        reward = means[arm] + sigma * z[t - 1]
        pulls[arm] += 1
        mean[arm] += (reward - mean[arm]) / pulls[arm]

        if ci < n_check and t == checkpoints[ci]:
            val = 0.0
            for a in range(K):
                val += pulls[a] * gaps[a]
            cum[ci] = val
            ci += 1

    return cum_out, pulls_arr, tracked_out
