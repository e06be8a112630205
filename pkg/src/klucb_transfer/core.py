"""Domain types and the deterministic randomness contract.

All simulation randomness is derived from a (master_seed, run_index,
stream_label) triple through numpy's SeedSequence + Philox counter-based
generator, so replications are bit-reproducible regardless of scheduling.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

STREAM_PRIOR_SAMPLES = "prior-samples"
STREAM_REWARDS = "rewards"
STREAM_TIE_BREAKS = "tie-breaks"

_STREAM_IDS = {
    STREAM_PRIOR_SAMPLES: 0,
    STREAM_REWARDS: 1,
    STREAM_TIE_BREAKS: 2,
}


@dataclass(frozen=True)
class BanditInstance:
    """Target Gaussian bandit: per-arm means and a shared standard deviation."""

    means: tuple[float, ...]
    sigma: float

    def __post_init__(self):
        means = tuple(float(m) for m in self.means)
        object.__setattr__(self, "means", means)
        if not means:
            raise ValueError("instance needs at least one arm")
        if not all(np.isfinite(means)):
            raise ValueError("arm means must be finite")
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be positive and finite, got {self.sigma}")

    @property
    def n_arms(self) -> int:
        return len(self.means)

    def optimal_mean(self) -> float:
        return max(self.means)

    def optimal_arm(self) -> int:
        """Lowest-index arm attaining the maximal mean (ties permitted)."""
        return int(np.argmax(self.means))

    def gaps(self) -> np.ndarray:
        return self.optimal_mean() - np.asarray(self.means)


@dataclass(frozen=True)
class PriorArm:
    """Offline data description for one arm: sample count, source mean, radius."""

    n_prior: int
    mu_prior: float = 0.0
    l_bound: float = 0.0

    def __post_init__(self):
        if self.n_prior < 0:
            raise ValueError("n_prior must be non-negative")
        if self.l_bound < 0:
            raise ValueError("l_bound must be non-negative")


@dataclass(frozen=True)
class PriorSpec:
    """Per-arm offline-sample description plus the shared source std dev."""

    arms: tuple[PriorArm, ...]
    sigma_prior: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "arms", tuple(self.arms))
        if not (np.isfinite(self.sigma_prior) and self.sigma_prior > 0):
            raise ValueError("sigma_prior must be positive and finite")

    @classmethod
    def no_prior(cls, n_arms: int, sigma_prior: float = 1.0) -> "PriorSpec":
        return cls(tuple(PriorArm(0) for _ in range(n_arms)), sigma_prior)

    @property
    def n_arms(self) -> int:
        return len(self.arms)

    def check_matches(self, instance: BanditInstance) -> None:
        if self.n_arms != instance.n_arms:
            raise ValueError(
                f"prior spec has {self.n_arms} arms, instance has {instance.n_arms}"
            )

    def warn_if_invalid(self, instance: BanditInstance) -> None:
        """Warn when the known target means fall outside the declared radii."""
        for k, (arm, mu) in enumerate(zip(self.arms, instance.means)):
            if arm.n_prior > 0 and abs(mu - arm.mu_prior) > arm.l_bound:
                warnings.warn(
                    f"arm {k}: |mu - mu_prior| = {abs(mu - arm.mu_prior):.4g} "
                    f"exceeds l_bound = {arm.l_bound:.4g}",
                    stacklevel=2,
                )


@dataclass(frozen=True)
class PriorData:
    """Realized offline sample means, drawn once per run before any pull.

    Arms with n_prior = 0 carry the 0.0 sentinel, which no downstream formula
    reads (their prior penalty is identically zero).
    """

    n_prior: tuple[int, ...]
    mu_hat_prior: tuple[float, ...]

    def __post_init__(self):
        if len(self.n_prior) != len(self.mu_hat_prior):
            raise ValueError("n_prior and mu_hat_prior must have equal length")


@dataclass
class ArmStats:
    """Online pull count and running mean for one arm.

    The mean is maintained with the incremental (Welford-style) recurrence,
    which keeps accumulation error bounded over 10^6 updates.
    """

    pulls: int = 0
    mean: float = 0.0


def update_stats(stats: ArmStats, reward: float) -> ArmStats:
    if not np.isfinite(reward):
        raise ValueError(f"reward must be finite, got {reward}")
    pulls = stats.pulls + 1
    mean = stats.mean + (reward - stats.mean) / pulls
    return ArmStats(pulls=pulls, mean=mean)


@dataclass(frozen=True)
class SeedContract:
    """Pure mapping from (master_seed, run_index, stream_label) to a generator."""

    master_seed: int
    run_index: int
    stream_label: str

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 unsigned bits")
        if self.run_index < 0:
            raise ValueError("run_index must be non-negative")
        if self.stream_label not in _STREAM_IDS:
            raise ValueError(f"unknown stream label {self.stream_label!r}")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(
            entropy=self.master_seed,
            spawn_key=(self.run_index, _STREAM_IDS[self.stream_label]),
        )
        return np.random.Generator(np.random.Philox(seq))


def draw_prior_data(spec: PriorSpec, seed: SeedContract) -> PriorData:
    """Draw each arm's offline sample mean from its source distribution.

    mu_hat_prior[k] is the mean of n_prior[k] i.i.d. draws from
    Normal(mu_prior[k], sigma_prior^2); zero-count arms get the sentinel.
    """
    if seed.stream_label != STREAM_PRIOR_SAMPLES:
        raise ValueError("draw_prior_data requires the prior-samples stream")
    rng = seed.generator()
    mu_hats = []
    for arm in spec.arms:
        if arm.n_prior == 0:
            mu_hats.append(0.0)
        else:
            draws = rng.normal(arm.mu_prior, spec.sigma_prior, size=arm.n_prior)
            mu_hats.append(float(np.mean(draws)))
    return PriorData(
        n_prior=tuple(a.n_prior for a in spec.arms),
        mu_hat_prior=tuple(mu_hats),
    )
