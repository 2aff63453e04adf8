import pytest
from implantlab.cli import (
    apply_overrides,
    dump_run_config,
    freeze_run_config,
    load_run_config,
    parse_run_config,
    RunConfig,
)
from implantlab.core import ConfigurationError, PathConstants
from implantlab.envs import env_defaults
from implantlab.harness import Algorithm
from implantlab.perturb import PerturbationKind


class TestLoadRunConfig:
    def test__no_path__defaults(self):
        assert load_run_config() == RunConfig()

    def test__dumped_and_loaded__same_config(self, tmp_path):
        config = parse_run_config(
            {
                "seed": 3,
                "env": {"name": "Pendulum"},
                "algorithm": ["GAIL", "IMPLANT"],
                "planner": {"budget": 4, "horizon": 6},
                "perturbation": {"kind": "motor_noise", "sigma": 0.5},
            }
        )
        path = tmp_path / "config.yaml"
        path.write_text(dump_run_config(config), encoding="utf-8")

        assert load_run_config(path) == config

    def test__freeze__writes_config_file(self, tmp_path):
        path = freeze_run_config(RunConfig(seed=9), tmp_path)

        assert path.name == PathConstants.CONFIG_FILE_NAME
        assert load_run_config(path).seed == 9

    def test__empty_file__defaults(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")

        assert load_run_config(path) == RunConfig()

    def test__missing_file__raises(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_run_config(tmp_path / "absent.yaml")

    def test__invalid_yaml__raises(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("seed: [1, 2\n", encoding="utf-8")

        with pytest.raises(ConfigurationError):
            load_run_config(path)

    def test__not_a_mapping__raises(self):
        with pytest.raises(ConfigurationError):
            parse_run_config([1, 2, 3])

    def test__unknown_key__error_names_key_path(self):
        with pytest.raises(ConfigurationError) as info:
            parse_run_config({"eval": {"episodez": 3}})

        assert "eval.episodez" in str(info.value)

    def test__unknown_environment__raises(self):
        with pytest.raises(ConfigurationError):
            parse_run_config({"env": {"name": "CartPole"}})


class TestApplyOverrides:
    def test__no_overrides__unchanged(self):
        config = RunConfig(seed=2)

        assert apply_overrides(config) == config

    def test__seed_and_out__replaced(self):
        config = apply_overrides(RunConfig(), seed=11, out="/tmp/runs")

        assert config.seed == 11
        assert config.io.out == "/tmp/runs"

    def test__horizon_without_planner__starts_from_env_defaults(self):
        config = apply_overrides(RunConfig(), horizon=3)

        assert config.planner is not None
        assert config.planner.horizon == 3
        assert config.planner.budget == env_defaults("PointMass2D").budget

    def test__budget_with_planner__keeps_horizon(self):
        base = parse_run_config({"planner": {"budget": 4, "horizon": 6}})

        config = apply_overrides(base, budget=9)

        assert config.planner.budget == 9
        assert config.planner.horizon == 6

    def test__sigma__sets_perturbation_noise(self):
        base = parse_run_config({"perturbation": {"kind": "motor_noise"}})

        assert apply_overrides(base, sigma=0.25).perturbation.sigma == 0.25

    def test__algorithm__single_algorithm(self):
        config = apply_overrides(RunConfig(), algorithm="BC-Dropout")

        assert config.algorithm == [Algorithm.BC_DROPOUT]

    def test__sweep__replaces_perturbation(self):
        base = parse_run_config({"perturbation": {"kind": "motor_noise", "sigma": 1}})

        config = apply_overrides(base, sweep="transition_noise", horizon_sweep=True)

        assert config.eval.sweep is PerturbationKind.TRANSITION_NOISE
        assert config.perturbation.kind is PerturbationKind.NONE
        assert config.eval.horizon_sweep

    def test__invalid_result__raises(self):
        with pytest.raises(ConfigurationError):
            apply_overrides(RunConfig(), budget=0)
