"""Arm-selection strategies.

All policies share the same mechanics: arms that have never been pulled and
carry no prior data are forced first (ascending arm order); otherwise the arm
with the highest index wins, exact ties broken uniformly at random from the
tie-breaks stream.  One tie-break uniform is consumed every round whether or
not a tie occurs, so the stream position is a pure function of the round.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ArmStats, PriorData, PriorSpec
from .index import DeltaSchedule, IndexInputs, delta_at, index_closed_form


@dataclass
class PolicyState:
    stats: list[ArmStats]
    prior: PriorData
    spec: PriorSpec
    schedule: DeltaSchedule
    round: int = 1

    @property
    def n_arms(self) -> int:
        return len(self.stats)


def _forced_arm(state: PolicyState) -> int | None:
    for a in range(state.n_arms):
        if state.stats[a].pulls == 0 and state.prior.n_prior[a] == 0:
            return a
    return None


def _pick_argmax(indices: list[float], tie_break: float) -> int:
    best = max(indices)
    ties = [a for a, v in enumerate(indices) if v == best]
    if len(ties) == 1:
        return ties[0]
    return ties[min(int(tie_break * len(ties)), len(ties) - 1)]


def select_arm_klucb_transfer(
    state: PolicyState, sigma: float, tie_break: float
) -> int:
    forced = _forced_arm(state)
    if forced is not None:
        return forced
    delta = delta_at(state.schedule, state.round)
    indices = [
        _transfer_index(state, a, sigma, delta) for a in range(state.n_arms)
    ]
    return _pick_argmax(indices, tie_break)


def _transfer_index(
    state: PolicyState, arm: int, sigma: float, delta: float
) -> float:
    st = state.stats[arm]
    spec_arm = state.spec.arms[arm]
    n_prior = state.prior.n_prior[arm]
    if st.pulls == 0 and n_prior == 0:
        return math.inf
    alpha = st.pulls / (2.0 * sigma * sigma)
    beta = n_prior / (2.0 * state.spec.sigma_prior ** 2)
    shifted = state.prior.mu_hat_prior[arm] + spec_arm.l_bound
    return index_closed_form(
        IndexInputs(
            alpha=alpha,
            mu_hat=st.mean,
            beta=beta,
            shifted_prior=shifted,
            delta=delta,
        )
    )


def select_arm_klucb_classic(
    state: PolicyState, sigma: float, tie_break: float
) -> int:
    """Classical KL-UCB for Gaussians: mu_hat + sqrt(2 sigma^2 delta / N).

    Reference implementation; equals the transfer policy when no arm has
    prior data.
    """
    for a in range(state.n_arms):
        if state.stats[a].pulls == 0:
            return a
    delta = delta_at(state.schedule, state.round)
    indices = [
        state.stats[a].mean
        + math.sqrt(2.0 * sigma * sigma * delta / state.stats[a].pulls)
        for a in range(state.n_arms)
    ]
    return _pick_argmax(indices, tie_break)


def select_arm_ast_ucb(
    state: PolicyState, sigma: float, shift_l: float, tie_break: float
) -> int:
    """Pooled-mean UCB baseline with a shift-budget inflation.

    The cited episodic algorithm folds past-episode samples into the index;
    the documented adaptation here pools prior and online means and adds the
    shift budget once:

        (N' mu_hat' + N mu_hat) / (N' + N) + shift_l
            + sqrt(2 sigma^2 delta / (N' + N)).
    """
    if shift_l < 0:
        raise ValueError("shift_l must be non-negative")
    forced = _forced_arm(state)
    if forced is not None:
        return forced
    delta = delta_at(state.schedule, state.round)
    indices = []
    for a in range(state.n_arms):
        st = state.stats[a]
        n_prior = state.prior.n_prior[a]
        total = n_prior + st.pulls
        pooled = (
            n_prior * state.prior.mu_hat_prior[a] + st.pulls * st.mean
        ) / total
        indices.append(
            pooled + shift_l + math.sqrt(2.0 * sigma * sigma * delta / total)
        )
    return _pick_argmax(indices, tie_break)
