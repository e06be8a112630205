import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

from klucb_transfer.cli import main
from klucb_transfer.config import (
    DEFAULT_SEED,
    ExperimentConfig,
    bounds_table,
    emit_csv,
    parse_csv,
    preset,
)
from klucb_transfer.core import BanditInstance, PriorSpec
from klucb_transfer.engine import AggregateCurve, PolicyId
from klucb_transfer.index import LINEARIZED, DeltaSchedule

REFERENCE_MEANS = (1.0, 0.9, 0.8, 0.7, 0.6, 0.5)


def small_config(**overrides):
    kw = dict(
        instance=BanditInstance(REFERENCE_MEANS, 1.0),
        prior=PriorSpec.no_prior(6),
        policies=(PolicyId("klucb_transfer"),),
        schedule=DeltaSchedule(LINEARIZED, 0.05),
        horizon=500,
        runs=3,
        master_seed=11,
    )
    kw.update(overrides)
    return ExperimentConfig(**kw)


class TestPresets:
    def test_sim1_parameters(self):
        configs = dict(preset("sim1"))
        assert set(configs) == {
            "sim1_baseline",
            "sim1_d020_l040",
            "sim1_d011_l020",
            "sim1_d005_l010",
            "sim1_d000_l005",
        }
        base = configs["sim1_baseline"]
        assert base.instance.means == REFERENCE_MEANS
        assert base.instance.sigma == 1.0
        assert all(a.n_prior == 0 for a in base.prior.arms)
        assert base.policies[0].name == "klucb_classic"
        for label, cfg in configs.items():
            assert cfg.horizon == 10**6
            assert cfg.runs == 100
            assert cfg.master_seed == DEFAULT_SEED
            assert cfg.schedule.kind == LINEARIZED
            assert cfg.schedule.epsilon == 0.05
        c = configs["sim1_d005_l010"]
        assert all(
            a.n_prior == 1000 and a.l_bound == 0.10 for a in c.prior.arms
        )
        assert c.prior.arms[0].mu_prior == pytest.approx(1.05)
        assert c.prior.arms[5].mu_prior == pytest.approx(0.55)
        assert c.prior.sigma_prior == 1.0

    def test_sim2_parameters(self):
        configs = dict(preset("sim2"))
        opt = configs["sim2_optimistic"]
        pes = configs["sim2_pessimistic"]
        for c in (opt, pes):
            assert c.horizon == 10**4
            # prior data on the optimal arm only
            assert c.prior.arms[0].n_prior == 1000
            assert all(a.n_prior == 0 for a in c.prior.arms[1:])
        assert opt.prior.arms[0].mu_prior == 1.001
        assert opt.prior.arms[0].l_bound == 0.004
        assert pes.prior.arms[0].mu_prior == 0.990
        assert pes.prior.arms[0].l_bound == 0.210

    def test_sim3_parameters(self):
        configs = dict(preset("sim3"))
        ast = configs["sim3_ast_ucb"]
        assert ast.policies[0].name == "ast_ucb"
        assert ast.policies[0].shift_l == 0.10
        tr = configs["sim3_klucb_transfer"]
        assert tr.policies[0].name == "klucb_transfer"
        for c in configs.values():
            assert all(
                a.n_prior == 1000 and a.l_bound == 0.10 for a in c.prior.arms
            )

    def test_unknown_preset(self):
        with pytest.raises(ValueError):
            preset("sim9")


class TestConfigRoundTrip:
    def test_dict_round_trip(self):
        for _, cfg in preset("sim1") + preset("sim2") + preset("sim3"):
            assert ExperimentConfig.from_dict(cfg.to_dict()) == cfg

    def test_file_round_trip(self, tmp_path):
        cfg = small_config(output_path="out.csv")
        p = tmp_path / "cfg.json"
        cfg.save(p)
        assert ExperimentConfig.load(p) == cfg

    def test_missing_field_reports_name(self, tmp_path):
        d = small_config().to_dict()
        del d["horizon"]
        with pytest.raises(ValueError, match="horizon"):
            ExperimentConfig.from_dict(d)

    def test_mismatched_prior_rejected(self):
        with pytest.raises(ValueError):
            small_config(prior=PriorSpec.no_prior(3))


class TestCsv:
    def make_curves(self):
        rng = np.random.default_rng(0)
        t = np.array([1, 10, 100], dtype=np.int64)
        return {
            name: AggregateCurve(
                checkpoints=t,
                mean_regret=rng.random(3) * 100,
                sem=rng.random(3),
                runs=7,
            )
            for name in ("klucb_transfer", "klucb_classic")
        }

    def test_exact_round_trip(self, tmp_path):
        curves = self.make_curves()
        p = tmp_path / "out.csv"
        emit_csv(curves, p)
        back = parse_csv(p)
        assert set(back) == set(curves)
        for name in curves:
            assert np.array_equal(back[name].checkpoints, curves[name].checkpoints)
            assert np.array_equal(back[name].mean_regret, curves[name].mean_regret)
            assert np.array_equal(back[name].sem, curves[name].sem)
            assert back[name].runs == 7

    def test_reemission_byte_identical(self, tmp_path):
        p1 = tmp_path / "a.csv"
        p2 = tmp_path / "b.csv"
        emit_csv(self.make_curves(), p1)
        emit_csv(parse_csv(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_header_and_ordering(self, tmp_path):
        p = tmp_path / "out.csv"
        emit_csv(self.make_curves(), p)
        lines = p.read_text().splitlines()
        assert lines[0] == "policy,t,mean_regret,sem,runs"
        keys = [(ln.split(",")[0], int(ln.split(",")[1])) for ln in lines[1:]]
        assert keys == sorted(keys)
        assert "\r" not in p.read_bytes().decode()

    def test_rejects_malformed_header(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("wrong,header\n1,2\n")
        with pytest.raises(ValueError, match="header"):
            parse_csv(p)

    def test_rejects_empty_curves(self, tmp_path):
        with pytest.raises(ValueError):
            emit_csv({}, tmp_path / "x.csv")


class TestBoundsTable:
    def test_totals_row(self):
        cfg = small_config(horizon=10**6)
        text = bounds_table(cfg)
        lines = text.strip().split("\n")
        assert lines[0] == "arm,gap,pulls_lb,regret_contribution"
        body = [ln.split(",") for ln in lines[1:-1]]
        total = lines[-1].split(",")
        assert total[0] == "total"
        assert float(total[2]) == pytest.approx(
            sum(float(r[2]) for r in body), rel=1e-12
        )
        assert float(total[3]) == pytest.approx(
            sum(float(r[3]) for r in body), rel=1e-12
        )
        expected_regret = 2.0 * math.log(10**6) * (10 + 5 + 10 / 3 + 2.5 + 2)
        assert float(total[3]) == pytest.approx(expected_regret, rel=1e-12)

    def test_rejects_tied_optimum(self):
        cfg = small_config(
            instance=BanditInstance((1.0, 1.0, 0.5, 0.5, 0.5, 0.5), 1.0)
        )
        with pytest.raises(ValueError):
            bounds_table(cfg)


class TestCli:
    def test_backends_lists_python(self):
        res = CliRunner().invoke(main, ["backends"])
        assert res.exit_code == 0
        assert "python" in res.output

    def test_preset_writes_configs(self, tmp_path):
        res = CliRunner().invoke(
            main, ["preset", "sim2", "--out-dir", str(tmp_path)]
        )
        assert res.exit_code == 0
        files = sorted(p.name for p in tmp_path.glob("*.json"))
        assert files == [
            "sim2_baseline.json",
            "sim2_optimistic.json",
            "sim2_pessimistic.json",
        ]
        loaded = ExperimentConfig.load(tmp_path / "sim2_optimistic.json")
        assert loaded.prior.arms[0].mu_prior == 1.001

    def test_run_with_overrides(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        small_config().save(cfg_path)
        out = tmp_path / "result.csv"
        res = CliRunner().invoke(
            main,
            [
                "run", str(cfg_path),
                "--runs", "2", "--horizon", "200",
                "--seed", "5", "--output", str(out),
                "--backend", "python",
            ],
        )
        assert res.exit_code == 0, res.output
        curves = parse_csv(out)
        assert curves["klucb_transfer"].runs == 2
        assert curves["klucb_transfer"].checkpoints[-1] == 200

    def test_run_output_matches_library(self, tmp_path):
        cfg = small_config(output_path=str(tmp_path / "lib_or_cli.csv"))
        cfg_path = tmp_path / "cfg.json"
        cfg.save(cfg_path)
        res = CliRunner().invoke(main, ["run", str(cfg_path)])
        assert res.exit_code == 0, res.output
        via_cli = parse_csv(tmp_path / "lib_or_cli.csv")
        direct = cfg.execute()
        assert np.array_equal(
            via_cli["klucb_transfer"].mean_regret,
            direct["klucb_transfer"].mean_regret,
        )

    def test_bounds_stdout_and_file(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        small_config(horizon=10**6).save(cfg_path)
        res = CliRunner().invoke(main, ["bounds", str(cfg_path)])
        assert res.exit_code == 0
        assert res.output.startswith("arm,gap,pulls_lb,regret_contribution")
        out = tmp_path / "bounds.csv"
        res2 = CliRunner().invoke(
            main, ["bounds", str(cfg_path), "--out", str(out)]
        )
        assert res2.exit_code == 0
        assert out.read_text().splitlines()[0] == res.output.splitlines()[0]

    def test_run_rejects_missing_config(self):
        res = CliRunner().invoke(main, ["run", "/no/such/file.json"])
        assert res.exit_code != 0
