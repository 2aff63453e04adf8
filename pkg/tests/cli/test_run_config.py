import pydantic
import pytest
from implantlab.cli import RunConfig
from implantlab.harness import Algorithm
from implantlab.perturb import MOTOR_NOISE_GRID, PerturbationKind


class TestRunConfig:
    def test__defaults__every_algorithm_five_seeds(self):
        config = RunConfig()

        assert config.algorithm == list(Algorithm)
        assert config.experiment_seeds == [0, 1, 2, 3, 4]

    def test__experiment_seeds__offset_by_root_seed(self):
        config = RunConfig.model_validate({"seed": 10, "eval": {"seeds": 3}})

        assert config.experiment_seeds == [10, 11, 12]

    def test__single_algorithm_string__wrapped_in_list(self):
        config = RunConfig.model_validate({"algorithm": "IMPLANT"})

        assert config.algorithm == [Algorithm.IMPLANT]

    def test__repeated_algorithm__raises(self):
        with pytest.raises(pydantic.ValidationError):
            RunConfig.model_validate({"algorithm": ["GAIL", "GAIL"]})

    def test__no_algorithm__raises(self):
        with pytest.raises(pydantic.ValidationError):
            RunConfig.model_validate({"algorithm": []})

    def test__sweep_with_perturbation__raises(self):
        with pytest.raises(pydantic.ValidationError):
            RunConfig.model_validate(
                {
                    "eval": {"sweep": "motor_noise"},
                    "perturbation": {"kind": "motor_noise", "sigma": 0.1},
                }
            )

    def test__sweep_of_nuisance__raises(self):
        with pytest.raises(pydantic.ValidationError):
            RunConfig.model_validate({"eval": {"sweep": "action_nuisance"}})

    def test__negative_horizon__raises(self):
        with pytest.raises(pydantic.ValidationError):
            RunConfig.model_validate({"eval": {"horizons": [0, -1]}})

    def test__sweep__one_perturbation_per_sigma(self):
        config = RunConfig.model_validate({"eval": {"sweep": "motor_noise"}})

        perturbations = config.evaluation_perturbations()

        assert [p.sigma for p in perturbations] == list(MOTOR_NOISE_GRID)
        assert {p.kind for p in perturbations} == {PerturbationKind.MOTOR_NOISE}

    def test__experiment_specs__algorithms_outermost(self):
        config = RunConfig.model_validate(
            {"algorithm": ["BC", "GAIL"], "eval": {"sweep": "motor_noise"}}
        )

        specs = config.experiment_specs()

        assert len(specs) == 2 * len(MOTOR_NOISE_GRID)
        assert specs[0].algorithm is Algorithm.BC
        assert specs[-1].algorithm is Algorithm.GAIL
        assert specs[0].seeds == config.experiment_seeds

    def test__experiment_spec__planner_only_for_planner_algorithms(self):
        config = RunConfig.model_validate({"planner": {"budget": 3, "horizon": 4}})

        assert config.experiment_spec(Algorithm.GAIL).planner is None
        assert config.experiment_spec(Algorithm.IMPLANT).planner.budget == 3

    def test__training_specs__one_per_family(self):
        config = RunConfig.model_validate(
            {"algorithm": ["GAIL", "IMPLANT", "GAIL-Reward-Only", "BC"]}
        )

        families = [spec.algorithm for spec in config.training_specs()]

        assert families == [Algorithm.GAIL, Algorithm.BC]

    def test__horizon_sweep__adds_gail_training(self):
        config = RunConfig.model_validate(
            {"algorithm": ["BC"], "eval": {"horizon_sweep": True}}
        )

        families = [spec.algorithm for spec in config.training_specs()]

        assert families == [Algorithm.BC, Algorithm.GAIL]
