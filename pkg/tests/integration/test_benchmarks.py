import numpy as np
import pytest
from implantlab.harness import (
    Algorithm,
    confounded_env,
    episode_seeds,
    ExperimentSpec,
    MatrixResult,
    measure_references,
    run_matrix,
    training_key,
)
from implantlab.harness.utilities import ResultColumns
from implantlab.perturb import PerturbationKind, PerturbationSpec
from implantlab.planner import run_policy_episode

_SEEDS = [0, 1, 2, 3, 4]
_EPISODES = 5
_TRANSITION_SIGMAS = (0.002, 0.005)


def _spec(algorithm: Algorithm, perturbation: PerturbationSpec) -> ExperimentSpec:
    return ExperimentSpec(
        env="PointMass2D",
        algorithm=algorithm,
        perturbation=perturbation,
        seeds=_SEEDS,
        episodes=_EPISODES,
    )


def _mean(result: MatrixResult, algorithm: Algorithm, column: str, sigma=0.0):
    rows = result.results[
        (result.results[ResultColumns.ALGORITHM] == algorithm.value)
        & (result.results[ResultColumns.SIGMA] == sigma)
    ]
    assert set(rows[ResultColumns.STATUS]) == {ResultColumns.STATUS_OK}
    return float(rows[column].mean())


@pytest.fixture(scope="module")
def clean_and_transition_result() -> MatrixResult:
    """Fixture to run BC, GAIL and IMPLANT clean and under small transition noise."""
    specs = [
        _spec(algorithm, PerturbationSpec())
        for algorithm in (Algorithm.BC, Algorithm.GAIL, Algorithm.IMPLANT)
    ]
    specs += [
        _spec(
            algorithm,
            PerturbationSpec(kind=PerturbationKind.TRANSITION_NOISE, sigma=sigma),
        )
        for sigma in _TRANSITION_SIGMAS
        for algorithm in (Algorithm.GAIL, Algorithm.IMPLANT)
    ]
    return run_matrix(specs, jobs=4)


@pytest.fixture(scope="module")
def action_nuisance_result() -> MatrixResult:
    """Fixture to run BC, GAIL and IMPLANT trained under the action nuisance."""
    nuisance = PerturbationSpec(kind=PerturbationKind.ACTION_NUISANCE)
    return run_matrix(
        [
            _spec(algorithm, nuisance)
            for algorithm in (Algorithm.BC, Algorithm.GAIL, Algorithm.IMPLANT)
        ],
        jobs=4,
    )


@pytest.mark.integration
@pytest.mark.slow
class TestPointMassBenchmark:
    def test__gail__reaches_most_of_expert_return(self, clean_and_transition_result):
        gail = _mean(
            clean_and_transition_result, Algorithm.GAIL, ResultColumns.NORMALIZED
        )

        assert gail >= 0.8

    def test__bc__falls_short_with_sparse_demos(self, clean_and_transition_result):
        bc = _mean(clean_and_transition_result, Algorithm.BC, ResultColumns.NORMALIZED)

        assert bc < 0.5

    def test__implant__matches_gail_without_noise(self, clean_and_transition_result):
        result = clean_and_transition_result

        implant = _mean(result, Algorithm.IMPLANT, ResultColumns.MEAN_RETURN)
        gail = _mean(result, Algorithm.GAIL, ResultColumns.MEAN_RETURN)

        assert implant >= gail

    def test__implant__matches_gail_under_transition_noise(
        self, clean_and_transition_result
    ):
        result = clean_and_transition_result

        implant = _mean(
            result, Algorithm.IMPLANT, ResultColumns.MEAN_RETURN, sigma=0.005
        )
        gail = _mean(result, Algorithm.GAIL, ResultColumns.MEAN_RETURN, sigma=0.005)

        assert implant >= gail


@pytest.mark.integration
@pytest.mark.slow
class TestCausalConfusionBenchmark:
    def test__bc__copies_previous_action(self, action_nuisance_result):
        score = _mean(action_nuisance_result, Algorithm.BC, ResultColumns.COPY_SCORE)

        assert score > 0.5

    def test__bc__loses_return_once_nuisance_is_noise(self, action_nuisance_result):
        result = action_nuisance_result
        spec = _spec(
            Algorithm.BC, PerturbationSpec(kind=PerturbationKind.ACTION_NUISANCE)
        )
        env = confounded_env("PointMass2D")
        confounded = []
        for seed in _SEEDS:
            policy = result.artifacts[training_key(spec, seed)].policy
            returns = [
                run_policy_episode(env, policy, s).total_return()
                for s in episode_seeds(seed, _EPISODES)
            ]
            references = measure_references("PointMass2D", seed, _EPISODES)
            confounded.append(references.normalize(float(np.mean(returns))))

        test_mode = _mean(result, Algorithm.BC, ResultColumns.NORMALIZED)

        assert test_mode <= 0.6 * float(np.mean(confounded))

    def test__implant__beats_gail_once_nuisance_is_noise(self, action_nuisance_result):
        result = action_nuisance_result

        implant = _mean(result, Algorithm.IMPLANT, ResultColumns.NORMALIZED)
        gail = _mean(result, Algorithm.GAIL, ResultColumns.NORMALIZED)

        assert implant - gail >= 0.1
