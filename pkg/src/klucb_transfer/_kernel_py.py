"""Pure-Python fallback for the simulation loop.

Expression-for-expression mirror of `_kernel.pyx`; both backends must produce
bit-identical trajectories.  Keep any change synchronized with the Cython
source.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "python"

POLICY_TRANSFER = 0
POLICY_AST_UCB = 1
POLICY_UNIFORM = 2

SCHEDULE_THEORY = 0
SCHEDULE_LINEARIZED = 1

_INF = math.inf


def _delta_at(schedule_kind, epsilon, t):
    lt = math.log(t)
    if schedule_kind == SCHEDULE_THEORY:
        if lt > 1.0:
            return lt + 3.0 * math.log(lt)
        return lt
    return (1.0 + epsilon) * lt


def _transfer_index(alpha, mu, beta, shifted, delta):
    if alpha == 0.0 and beta == 0.0:
        return _INF
    if beta == 0.0:
        return mu + math.sqrt(delta / alpha)
    if alpha == 0.0:
        return shifted + math.sqrt(delta / beta)
    root_b = math.sqrt(delta / beta)
    if mu >= shifted + root_b:
        return shifted + root_b
    root_a = math.sqrt(delta / alpha)
    if shifted >= mu + root_a:
        return mu + root_a
    gap = mu - shifted
    disc = (alpha + beta) * delta - alpha * beta * gap * gap
    if disc < 0.0:
        disc = 0.0
    return (alpha * mu + beta * shifted + math.sqrt(disc)) / (alpha + beta)


def simulate(
    means,
    sigma,
    n_prior,
    mu_hat_prior,
    l_bound,
    sigma_prior,
    policy,
    shift_l,
    schedule_kind,
    epsilon,
    horizon,
    z,
    u,
    checkpoints,
    track_arm,
):
    """See `_kernel.simulate`; identical contract."""
    means = [float(v) for v in means]
    n_prior = [int(v) for v in n_prior]
    mu_hat_prior = [float(v) for v in mu_hat_prior]
    l_bound = [float(v) for v in l_bound]
    z = np.asarray(z, dtype=np.float64)
    u = np.asarray(u, dtype=np.float64)
    checkpoints = [int(v) for v in checkpoints]

    K = len(means)
    n_check = len(checkpoints)
    two_sigma2 = 2.0 * sigma * sigma

    pulls = [0] * K
    mean = [0.0] * K
    mu_star = max(means)
    gaps = [mu_star - m for m in means]
    beta = [n / (2.0 * sigma_prior * sigma_prior) for n in n_prior]
    shifted = [m + l for m, l in zip(mu_hat_prior, l_bound)]
    index = [0.0] * K
    cum_out = np.empty(n_check, dtype=np.float64)
    tracked_out = np.empty(n_check, dtype=np.float64)

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
                    index[a] = _INF
                else:
                    pooled = (
                        n_prior[a] * mu_hat_prior[a] + pulls[a] * mean[a]
                    ) / total
                    index[a] = pooled + shift_l + math.sqrt(
                        two_sigma2 * delta / total
                    )

        if ci < n_check and t == checkpoints[ci]:
            tracked_out[ci] = index[track_arm]

        arm = -1
        if policy == POLICY_UNIFORM:
            arm = int(u_t * K)
            if arm > K - 1:
                arm = K - 1
        else:
            for a in range(K):
                if pulls[a] == 0 and n_prior[a] == 0:
                    arm = a
                    break
        if arm < 0:
            best = max(index)
            ties = [a for a in range(K) if index[a] == best]
            if len(ties) == 1:
                arm = ties[0]
            else:
                j = int(u_t * len(ties))
                if j > len(ties) - 1:
                    j = len(ties) - 1
                arm = ties[j]

        reward = means[arm] + sigma * z[t - 1]
        pulls[arm] += 1
        mean[arm] += (reward - mean[arm]) / pulls[arm]

        if ci < n_check and t == checkpoints[ci]:
            cum_out[ci] = sum(pulls[a] * gaps[a] for a in range(K))
            ci += 1

    return cum_out, np.asarray(pulls, dtype=np.int64), tracked_out
