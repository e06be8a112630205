"""Deterministic Monte-Carlo regret engine.

Every run is keyed by (master_seed, run_index) through three independent
counter-based streams (prior samples, rewards, tie-breaks), so results are
bit-identical across replays and across worker counts.  Reward noise is drawn
as one standard normal per round independently of the pulled arm, which keeps
the stream position path-independent.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._backend import get_backend
from ._kernel_py import (
    POLICY_AST_UCB,
    POLICY_TRANSFER,
    POLICY_UNIFORM,
    SCHEDULE_LINEARIZED,
    SCHEDULE_THEORY,
)
from .core import (
    STREAM_PRIOR_SAMPLES,
    STREAM_REWARDS,
    STREAM_TIE_BREAKS,
    BanditInstance,
    PriorSpec,
    SeedContract,
    draw_prior_data,
)
from .index import LINEARIZED, DeltaSchedule

KLUCB_TRANSFER = "klucb_transfer"
KLUCB_CLASSIC = "klucb_classic"
AST_UCB = "ast_ucb"
UNIFORM_RANDOM = "uniform_random"  # sanity baseline, not part of the bundled studies

POLICY_NAMES = (KLUCB_TRANSFER, KLUCB_CLASSIC, AST_UCB, UNIFORM_RANDOM)


@dataclass(frozen=True)
class PolicyId:
    name: str
    shift_l: float = 0.0

    def __post_init__(self):
        if self.name not in POLICY_NAMES:
            raise ValueError(f"unknown policy {self.name!r}")
        if self.shift_l < 0:
            raise ValueError("shift_l must be non-negative")


@dataclass(frozen=True)
class RegretTrajectory:
    checkpoints: np.ndarray
    cum_regret: np.ndarray
    run_index: int
    policy_id: str
    pulls: np.ndarray = field(default=None, repr=False)
    tracked_index: np.ndarray = field(default=None, repr=False)


@dataclass(frozen=True)
class AggregateCurve:
    checkpoints: np.ndarray
    mean_regret: np.ndarray
    sem: np.ndarray
    runs: int

    @property
    def sem_defined(self) -> bool:
        return self.runs >= 2


def checkpoint_grid(horizon: int, count: int) -> np.ndarray:
    """Geometrically spaced unique integers from 1 to horizon inclusive."""
    if count < 2:
        raise ValueError("count must be >= 2")
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if count >= horizon:
        return np.arange(1, horizon + 1, dtype=np.int64)
    pts = np.rint(np.geomspace(1.0, float(horizon), count)).astype(np.int64)
    pts[0] = 1
    pts[-1] = horizon
    return np.unique(pts)


def run_single(
    instance: BanditInstance,
    prior_spec: PriorSpec,
    policy: PolicyId,
    schedule: DeltaSchedule,
    horizon: int,
    master_seed: int,
    run_index: int,
    checkpoints: np.ndarray | None = None,
    backend=None,
    track_arm: int | None = None,
) -> RegretTrajectory:
    """Simulate one run and record pseudo-regret at the checkpoints."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    prior_spec.check_matches(instance)
    if checkpoints is None:
        checkpoints = checkpoint_grid(horizon, 200)
    checkpoints = np.asarray(checkpoints, dtype=np.int64)
    if backend is None:
        backend = get_backend()
    if track_arm is None:
        track_arm = instance.optimal_arm()

    prior = draw_prior_data(
        prior_spec, SeedContract(master_seed, run_index, STREAM_PRIOR_SAMPLES)
    )
    z = (
        SeedContract(master_seed, run_index, STREAM_REWARDS)
        .generator()
        .standard_normal(horizon)
    )
    u = (
        SeedContract(master_seed, run_index, STREAM_TIE_BREAKS)
        .generator()
        .random(horizon)
    )

    n_prior = np.asarray(prior.n_prior, dtype=np.int64)
    mu_hat_prior = np.asarray(prior.mu_hat_prior, dtype=np.float64)
    l_bound = np.asarray(
        [a.l_bound for a in prior_spec.arms], dtype=np.float64
    )
    if policy.name == KLUCB_CLASSIC:
        n_prior = np.zeros_like(n_prior)
    if policy.name == AST_UCB:
        kernel_policy = POLICY_AST_UCB
    elif policy.name == UNIFORM_RANDOM:
        kernel_policy = POLICY_UNIFORM
    else:
        kernel_policy = POLICY_TRANSFER
    schedule_kind = (
        SCHEDULE_LINEARIZED if schedule.kind == LINEARIZED else SCHEDULE_THEORY
    )

    cum, pulls, tracked = backend.simulate(
        np.asarray(instance.means, dtype=np.float64),
        instance.sigma,
        n_prior,
        mu_hat_prior,
        l_bound,
        prior_spec.sigma_prior,
        kernel_policy,
        policy.shift_l,
        schedule_kind,
        schedule.epsilon,
        horizon,
        z,
        u,
        checkpoints,
        track_arm,
    )
    return RegretTrajectory(
        checkpoints=checkpoints,
        cum_regret=cum,
        run_index=run_index,
        policy_id=policy.name,
        pulls=pulls,
        tracked_index=tracked,
    )


def _run_one(args):
    (
        instance,
        prior_spec,
        policy,
        schedule,
        horizon,
        master_seed,
        run_index,
        checkpoints,
        backend_name,
    ) = args
    traj = run_single(
        instance,
        prior_spec,
        policy,
        schedule,
        horizon,
        master_seed,
        run_index,
        checkpoints,
        backend=get_backend(backend_name),
    )
    return traj.cum_regret


def run_experiment(
    instance: BanditInstance,
    prior_spec: PriorSpec,
    policies: list[PolicyId],
    schedule: DeltaSchedule,
    horizon: int,
    runs: int,
    master_seed: int,
    checkpoint_count: int = 200,
    workers: int = 1,
    backend_name: str | None = None,
) -> dict[str, AggregateCurve]:
    """Run `runs` independent replications of each policy and aggregate.

    Output is a pure function of the arguments: run r always uses
    run_index = r, and aggregation order is fixed, so worker count never
    changes the result.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    names = [p.name for p in policies]
    if len(set(names)) != len(names):
        raise ValueError("duplicate policy names in one experiment")
    checkpoints = checkpoint_grid(horizon, checkpoint_count)

    jobs = [
        (
            instance,
            prior_spec,
            policy,
            schedule,
            horizon,
            master_seed,
            r,
            checkpoints,
            backend_name,
        )
        for policy in policies
        for r in range(runs)
    ]
    if workers <= 1:
        results = [_run_one(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=8))

    curves: dict[str, AggregateCurve] = {}
    for i, policy in enumerate(policies):
        block = np.vstack(results[i * runs : (i + 1) * runs])
        mean = block.mean(axis=0)
        if runs >= 2:
            sem = block.std(axis=0, ddof=1) / np.sqrt(runs)
        else:
            sem = np.zeros_like(mean)
        curves[policy.name] = AggregateCurve(
            checkpoints=checkpoints, mean_regret=mean, sem=sem, runs=runs
        )
    return curves
