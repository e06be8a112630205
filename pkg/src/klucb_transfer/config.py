"""Experiment configuration files, bundled study presets, and CSV emission.

Config format: JSON, one experiment per file.  Schema (all fields required
unless noted):

    {
      "instance":  {"means": [..], "sigma": 1.0},
      "prior":     {"sigma_prior": 1.0,
                    "arms": [{"n_prior": 0, "mu_prior": 0.0, "l_bound": 0.0}, ..]},
      "policies":  [{"name": "klucb_transfer"}, {"name": "ast_ucb", "shift_l": 0.1}],
      "schedule":  {"kind": "linearized", "epsilon": 0.05},
      "horizon":   1000000,
      "runs":      100,
      "master_seed": 97531,
      "checkpoint_count": 200,        // optional, default 200
      "output_path": "sim1_base.csv"  // optional
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import BanditInstance, PriorArm, PriorSpec
from .engine import (
    AggregateCurve,
    KLUCB_CLASSIC,
    KLUCB_TRANSFER,
    AST_UCB,
    PolicyId,
    run_experiment,
)
from .index import LINEARIZED, THEORY, DeltaSchedule
from .theory import BoundInputs, pulls_lower_bound

DEFAULT_SEED = 97531


@dataclass(frozen=True)
class ExperimentConfig:
    instance: BanditInstance
    prior: PriorSpec
    policies: tuple[PolicyId, ...]
    schedule: DeltaSchedule
    horizon: int
    runs: int
    master_seed: int
    checkpoint_count: int = 200
    output_path: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "policies", tuple(self.policies))
        self.prior.check_matches(self.instance)
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")

    def to_dict(self) -> dict:
        d = {
            "instance": {
                "means": list(self.instance.means),
                "sigma": self.instance.sigma,
            },
            "prior": {
                "sigma_prior": self.prior.sigma_prior,
                "arms": [
                    {
                        "n_prior": a.n_prior,
                        "mu_prior": a.mu_prior,
                        "l_bound": a.l_bound,
                    }
                    for a in self.prior.arms
                ],
            },
            "policies": [
                {"name": p.name, "shift_l": p.shift_l}
                if p.name == AST_UCB
                else {"name": p.name}
                for p in self.policies
            ],
            "schedule": {"kind": self.schedule.kind},
            "horizon": self.horizon,
            "runs": self.runs,
            "master_seed": self.master_seed,
            "checkpoint_count": self.checkpoint_count,
        }
        if self.schedule.kind == LINEARIZED:
            d["schedule"]["epsilon"] = self.schedule.epsilon
        if self.output_path is not None:
            d["output_path"] = self.output_path
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        try:
            instance = BanditInstance(
                means=tuple(d["instance"]["means"]),
                sigma=float(d["instance"]["sigma"]),
            )
            prior = PriorSpec(
                arms=tuple(
                    PriorArm(
                        n_prior=int(a["n_prior"]),
                        mu_prior=float(a.get("mu_prior", 0.0)),
                        l_bound=float(a.get("l_bound", 0.0)),
                    )
                    for a in d["prior"]["arms"]
                ),
                sigma_prior=float(d["prior"]["sigma_prior"]),
            )
            policies = tuple(
                PolicyId(name=p["name"], shift_l=float(p.get("shift_l", 0.0)))
                for p in d["policies"]
            )
            schedule = DeltaSchedule(
                kind=d["schedule"]["kind"],
                epsilon=float(d["schedule"].get("epsilon", 0.0)),
            )
            return cls(
                instance=instance,
                prior=prior,
                policies=policies,
                schedule=schedule,
                horizon=int(d["horizon"]),
                runs=int(d["runs"]),
                master_seed=int(d["master_seed"]),
                checkpoint_count=int(d.get("checkpoint_count", 200)),
                output_path=d.get("output_path"),
            )
        except KeyError as exc:
            raise ValueError(f"config missing field {exc.args[0]!r}") from exc

    def save(self, path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8"
        )

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def execute(self, workers: int = 1, backend_name: str | None = None):
        return run_experiment(
            self.instance,
            self.prior,
            list(self.policies),
            self.schedule,
            self.horizon,
            self.runs,
            self.master_seed,
            self.checkpoint_count,
            workers=workers,
            backend_name=backend_name,
        )


REFERENCE_MEANS = (1.0, 0.9, 0.8, 0.7, 0.6, 0.5)
REFERENCE_N_PRIOR = 1000
SIM1_SHIFTS = ((0.20, 0.40), (0.11, 0.20), (0.05, 0.10), (0.00, 0.05))


def _reference_instance() -> BanditInstance:
    return BanditInstance(means=REFERENCE_MEANS, sigma=1.0)


def _shifted_prior(delta: float, l: float) -> PriorSpec:
    return PriorSpec(
        arms=tuple(
            PriorArm(n_prior=REFERENCE_N_PRIOR, mu_prior=m + delta, l_bound=l)
            for m in REFERENCE_MEANS
        ),
        sigma_prior=1.0,
    )


def _optimal_arm_prior(mu_prior: float, l: float) -> PriorSpec:
    arms = [PriorArm(n_prior=REFERENCE_N_PRIOR, mu_prior=mu_prior, l_bound=l)]
    arms += [PriorArm(0) for _ in REFERENCE_MEANS[1:]]
    return PriorSpec(arms=tuple(arms), sigma_prior=1.0)


def preset(name: str) -> list[tuple[str, ExperimentConfig]]:
    """Named experiment presets; returns (label, config) pairs."""
    instance = _reference_instance()
    schedule = DeltaSchedule(kind=LINEARIZED, epsilon=0.05)
    no_prior = PriorSpec.no_prior(instance.n_arms)

    def cfg(label, prior, policies, horizon, runs):
        return label, ExperimentConfig(
            instance=instance,
            prior=prior,
            policies=policies,
            schedule=schedule,
            horizon=horizon,
            runs=runs,
            master_seed=DEFAULT_SEED,
            output_path=f"{label}.csv",
        )

    transfer = (PolicyId(KLUCB_TRANSFER),)
    classic = (PolicyId(KLUCB_CLASSIC),)

    if name == "sim1":
        configs = [cfg("sim1_baseline", no_prior, classic, 10**6, 100)]
        for delta, l in SIM1_SHIFTS:
            label = f"sim1_d{int(round(delta * 100)):03d}_l{int(round(l * 100)):03d}"
            configs.append(
                cfg(label, _shifted_prior(delta, l), transfer, 10**6, 100)
            )
        return configs
    if name == "sim2":
        return [
            cfg("sim2_baseline", no_prior, classic, 10**4, 100),
            cfg(
                "sim2_optimistic",
                _optimal_arm_prior(1.001, 0.004),
                transfer,
                10**4,
                100,
            ),
            cfg(
                "sim2_pessimistic",
                _optimal_arm_prior(0.990, 0.210),
                transfer,
                10**4,
                100,
            ),
        ]
    if name == "sim3":
        prior = _shifted_prior(0.05, 0.10)
        return [
            cfg("sim3_klucb_transfer", prior, transfer, 10**6, 100),
            cfg(
                "sim3_ast_ucb",
                prior,
                (PolicyId(AST_UCB, shift_l=0.10),),
                10**6,
                100,
            ),
        ]
    raise ValueError(f"unknown preset {name!r}")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def emit_csv(curves: dict[str, AggregateCurve], path) -> None:
    """Write aggregated curves: header policy,t,mean_regret,sem,runs."""
    if not curves:
        raise ValueError("no curves to emit")
    lines = ["policy,t,mean_regret,sem,runs"]
    for policy in sorted(curves):
        curve = curves[policy]
        for t, m, s in zip(curve.checkpoints, curve.mean_regret, curve.sem):
            lines.append(f"{policy},{int(t)},{_fmt(m)},{_fmt(s)},{curve.runs}")
    try:
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OSError(f"failed to write CSV to {path}: {exc}") from exc


def parse_csv(path) -> dict[str, AggregateCurve]:
    """Inverse of emit_csv; exact round-trip of the emitted values."""
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.split("\n") if ln]
    if not lines or lines[0] != "policy,t,mean_regret,sem,runs":
        raise ValueError(f"{path}: missing or malformed CSV header")
    rows: dict[str, list[tuple[int, float, float, int]]] = {}
    for ln in lines[1:]:
        policy, t, m, s, runs = ln.split(",")
        rows.setdefault(policy, []).append(
            (int(t), float(m), float(s), int(runs))
        )
    curves = {}
    for policy, recs in rows.items():
        recs.sort(key=lambda r: r[0])
        curves[policy] = AggregateCurve(
            checkpoints=np.asarray([r[0] for r in recs], dtype=np.int64),
            mean_regret=np.asarray([r[1] for r in recs]),
            sem=np.asarray([r[2] for r in recs]),
            runs=recs[0][3],
        )
    return curves


def bounds_table(config: ExperimentConfig, path=None) -> str:
    """Per-arm pull-count floors and regret contributions at the horizon."""
    instance = config.instance
    mu_star = instance.optimal_mean()
    optimal = [k for k, m in enumerate(instance.means) if m == mu_star]
    if len(optimal) > 1:
        raise ValueError("bounds table requires a unique optimal arm")
    lines = ["arm,gap,pulls_lb,regret_contribution"]
    total_pulls = 0.0
    total_regret = 0.0
    for k, mu_k in enumerate(instance.means):
        if k == optimal[0]:
            continue
        arm = config.prior.arms[k]
        lb = pulls_lower_bound(
            BoundInputs(
                mu_star=mu_star,
                mu_k=mu_k,
                sigma=instance.sigma,
                n_prior=arm.n_prior,
                mu_prior=arm.mu_prior,
                l_bound=arm.l_bound,
                sigma_prior=config.prior.sigma_prior,
                horizon=config.horizon,
            )
        )
        gap = mu_star - mu_k
        total_pulls += lb
        total_regret += gap * lb
        lines.append(f"{k},{_fmt(gap)},{_fmt(lb)},{_fmt(gap * lb)}")
    lines.append(f"total,,{_fmt(total_pulls)},{_fmt(total_regret)}")
    text = "\n".join(lines) + "\n"
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise OSError(
                f"failed to write bounds table to {path}: {exc}"
            ) from exc
    return text
