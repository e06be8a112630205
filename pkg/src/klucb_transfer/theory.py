"""Closed-form evaluators for the transfer-aware regret bounds.

Leading terms only: the o(ln T) / O((ln T)^{2/3}) remainders are not
evaluated, so comparisons against simulations use multiplicative bands.

The normal CDF is computed through erfc, which is accurate to a few ulp;
the integral identity `lemma2_I_closed` subtracts nearly equal large terms
and needs that accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import BanditInstance, PriorSpec

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def norm_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / _SQRT2)


def norm_pdf(x: float) -> float:
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


@dataclass(frozen=True)
class BoundInputs:
    mu_star: float
    mu_k: float
    sigma: float
    n_prior: int = 0
    mu_prior: float = 0.0
    l_bound: float = 0.0
    sigma_prior: float = 1.0
    horizon: int = 1

    def __post_init__(self):
        if self.sigma <= 0 or self.sigma_prior <= 0:
            raise ValueError("standard deviations must be positive")
        if self.n_prior < 0 or self.l_bound < 0:
            raise ValueError("n_prior and l_bound must be non-negative")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")


def kinf_gaussian(
    mu_prior: float, mu_tilde: float, l_bound: float, sigma_prior: float
) -> float:
    """Minimal source KL compatible with a shifted target mean.

    Squared distance from mu_prior to the nearest point of
    [mu_tilde - l_bound, mu_tilde + l_bound], over 2 sigma_prior^2.
    """
    if sigma_prior <= 0:
        raise ValueError("sigma_prior must be positive")
    if l_bound < 0:
        raise ValueError("l_bound must be non-negative")
    excess = abs(mu_tilde - mu_prior) - l_bound
    if excess <= 0.0:
        return 0.0
    return excess * excess / (2.0 * sigma_prior * sigma_prior)


def pulls_lower_bound(inp: BoundInputs) -> float:
    """Leading term of the minimal expected pull count of a suboptimal arm."""
    gap = inp.mu_star - inp.mu_k
    if gap <= 0:
        raise ValueError("mu_star must exceed mu_k")
    # Offline information term: one-sided, only a prior envelope strictly
    # below mu_star constrains a suboptimal arm.
    shortfall = max(inp.mu_star - inp.mu_prior - inp.l_bound, 0.0)
    penalty = (
        inp.n_prior
        * shortfall
        * shortfall
        / (2.0 * inp.sigma_prior * inp.sigma_prior)
    )
    budget = math.log(inp.horizon) - penalty
    if budget <= 0.0:
        return 0.0
    return 2.0 * inp.sigma * inp.sigma / (gap * gap) * budget


def pulls_upper_bound(inp: BoundInputs) -> float:
    """Leading term of the achievable pull-count bound (matches the floor)."""
    return pulls_lower_bound(inp)


def regret_lower_bound(
    instance: BanditInstance, prior: PriorSpec, horizon: int
) -> float:
    """Asymptotic regret floor: sum of gap * pulls_lower_bound over arms."""
    prior.check_matches(instance)
    mu_star = instance.optimal_mean()
    optimal = [k for k, m in enumerate(instance.means) if m == mu_star]
    if len(optimal) > 1:
        raise ValueError("regret lower bound requires a unique optimal arm")
    total = 0.0
    for k, mu_k in enumerate(instance.means):
        if k == optimal[0]:
            continue
        arm = prior.arms[k]
        lb = pulls_lower_bound(
            BoundInputs(
                mu_star=mu_star,
                mu_k=mu_k,
                sigma=instance.sigma,
                n_prior=arm.n_prior,
                mu_prior=arm.mu_prior,
                l_bound=arm.l_bound,
                sigma_prior=prior.sigma_prior,
                horizon=horizon,
            )
        )
        total += (mu_star - mu_k) * lb
    return total


def lemma2_I_closed(beta: float, delta: float) -> float:
    """Closed form of the integral I(beta, delta) = int_0^delta Phi(sqrt(2(delta-t)) - beta) dt."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    r = math.sqrt(2.0 * delta)
    return (
        0.5 * (2.0 * delta - beta * beta - 1.0) * norm_cdf(r - beta)
        + 0.5 * (beta * beta + 1.0) * norm_cdf(-beta)
        + 0.5 * (r + beta) * norm_pdf(r - beta)
        - 0.5 * beta * norm_pdf(beta)
    )


def lemma3_constant(a: float) -> float:
    """E[exp((W - a)_+^2 / 2)] for standard normal W: Phi(a) + phi(a)/a."""
    if a <= 0:
        raise ValueError("a must be positive")
    return norm_cdf(a) + norm_pdf(a) / a
