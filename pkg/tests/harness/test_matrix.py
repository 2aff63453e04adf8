import numpy as np
import pandas as pd
import pytest
from implantlab.core import TrainingDivergedError
from implantlab.envs import LinearQuadratic
from implantlab.harness import (
    Algorithm,
    DemoProtocol,
    ExperimentSpec,
    run_matrix,
    TrainedArtifacts,
    trajectories_of,
    training_key,
)
from implantlab.harness.utilities import ResultColumns
from implantlab.imitation import BcConfig, GaussianPolicy, IrlConfig
from implantlab.planner import PlannerConfig

_ALGORITHMS = ["BC", "GAIL", "IMPLANT"]


def _tiny_specs():
    planner = PlannerConfig(budget=2, horizon=2)
    return [
        ExperimentSpec(
            env="LinearQuadratic",
            algorithm=algorithm,
            planner=planner if algorithm == "IMPLANT" else None,
            seeds=[0],
            episodes=2,
            demos=DemoProtocol(n_traj=2, subsample=5, episode_length=None),
            bc=BcConfig(epochs=3, batch_size=16, hidden_dims=[8]),
            irl=IrlConfig(
                iterations=2,
                batch_steps=64,
                generator_steps=1,
                value_fn_steps=1,
                minibatch_size=32,
                disc_minibatch_size=32,
                hidden_dims=[8],
                norm_warmup_iterations=1,
            ),
        )
        for algorithm in _ALGORITHMS
    ]


@pytest.fixture(scope="module")
def matrix_result():
    """Fixture to get one tiny end-to-end matrix run on LinearQuadratic."""
    rows = []
    result = run_matrix(_tiny_specs(), on_cell=rows.append)
    return result, rows


class TestRunMatrix:
    def test__one_ok_row_per_cell_in_canonical_order(self, matrix_result):
        result, _ = matrix_result

        assert list(result.results[ResultColumns.ALGORITHM]) == _ALGORITHMS
        assert set(result.results[ResultColumns.STATUS]) == {ResultColumns.STATUS_OK}
        assert list(result.results[ResultColumns.N_EPISODES]) == [2, 2, 2]

    def test__on_cell__called_in_order(self, matrix_result):
        result, rows = matrix_result

        assert [row.algorithm for row in rows] == _ALGORITHMS
        assert [row.mean_return for row in rows] == list(
            result.results[ResultColumns.MEAN_RETURN]
        )

    def test__planner_reuses_gail_training(self, matrix_result):
        result, _ = matrix_result
        gail, implant = _tiny_specs()[1:]

        assert len(result.artifacts) == 2
        assert training_key(gail, 0) == training_key(implant, 0)
        artifacts = result.artifacts[training_key(gail, 0)]
        assert artifacts.family is Algorithm.GAIL
        assert artifacts.discriminator is not None
        assert len(artifacts.irl_log) == 2

    def test__summary_and_reports__one_per_algorithm(self, matrix_result):
        result, _ = matrix_result

        assert list(result.summary[ResultColumns.ALGORITHM]) == _ALGORITHMS
        assert list(result.summary["n_seeds"]) == [1, 1, 1]
        assert [r.algorithm for r in result.reports] == _ALGORITHMS
        assert all(r.expert_return > r.random_return for r in result.reports)

    def test__trajectories__every_episode_listed(self, matrix_result):
        result, _ = matrix_result

        episodes = trajectories_of(result)

        assert len(episodes) == 6
        assert [k for _, _, k, _ in episodes] == [0, 1, 0, 1, 0, 1]
        env = LinearQuadratic()
        assert all(t.length == env.max_episode_steps for _, _, _, t in episodes)

    def test__rerun_with_more_jobs__identical_results(self, matrix_result):
        result, _ = matrix_result

        rerun = run_matrix(_tiny_specs(), jobs=2, planner_workers=2)

        pd.testing.assert_frame_equal(result.results, rerun.results)

    def test__no_action_nuisance__copy_score_column_empty(self, matrix_result):
        result, _ = matrix_result

        assert result.results[ResultColumns.COPY_SCORE].isna().all()
        assert result.summary["mean_copy_score"].isna().all()


class TestRunMatrixFailures:
    def test__diverged_training__failed_rows_and_matrix_continues(self, rng):
        env = LinearQuadratic()
        policy = GaussianPolicy.create(
            env.obs_dim, env.action_low, env.action_high, rng, hidden_dims=[4]
        )

        def _provider(spec, seed):
            if spec.algorithm.training_family is Algorithm.GAIL:
                raise TrainingDivergedError("non-finite gradient in layer 0")
            return TrainedArtifacts(Algorithm.BC, policy)

        result = run_matrix(_tiny_specs(), provider=_provider)

        statuses = list(result.results[ResultColumns.STATUS])
        assert statuses[0] == ResultColumns.STATUS_OK
        assert statuses[1:] == ["failed: non-finite gradient in layer 0"] * 2
        assert np.isnan(result.results[ResultColumns.MEAN_RETURN][1])
        assert list(result.summary["n_failed"]) == [0, 1, 1]
        assert result.cells[1][2] is None
        assert len(trajectories_of(result)) == 2
