"""Gaussian multi-armed bandits with offline prior samples.

Transfer-aware UCB index policy, closed-form regret-bound evaluators, and a
deterministic Monte-Carlo regret engine with a compiled hot loop.
"""

from ._backend import available_backends, get_backend
from .core import (
    ArmStats,
    BanditInstance,
    PriorArm,
    PriorData,
    PriorSpec,
    SeedContract,
    draw_prior_data,
    update_stats,
)
from .engine import (
    AST_UCB,
    AggregateCurve,
    KLUCB_CLASSIC,
    KLUCB_TRANSFER,
    PolicyId,
    RegretTrajectory,
    checkpoint_grid,
    run_experiment,
    run_single,
)
from .index import (
    DeltaSchedule,
    IndexInputs,
    UnboundedIndexError,
    delta_at,
    index_bisection_oracle,
    index_closed_form,
    prior_penalty,
)
from .config import ExperimentConfig, bounds_table, emit_csv, parse_csv, preset
from .theory import (
    BoundInputs,
    kinf_gaussian,
    lemma2_I_closed,
    lemma3_constant,
    pulls_lower_bound,
    pulls_upper_bound,
    regret_lower_bound,
)

__version__ = "0.1.0"
