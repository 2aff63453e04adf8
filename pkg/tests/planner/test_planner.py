from concurrent.futures import ThreadPoolExecutor
from typing import Tuple

import numpy as np
import pytest
from implantlab.core import PlanningAbortedError, RejectedInputError
from implantlab.envs import PointMass2D
from implantlab.imitation import GaussianPolicy, ValueFn
from implantlab.net import Mlp
from implantlab.planner import (
    CandidateSource,
    diagnostics_to_dataframe,
    DIAGNOSTICS_COLUMNS,
    plan_action,
    PlannerConfig,
    RolloutPolicy,
    run_episode_with_planning,
    run_policy_episode,
    simulate_candidates,
)


class _DivergingPointMass(PointMass2D):
    def _dynamics(
        self, physical: np.ndarray, action: np.ndarray
    ) -> Tuple[np.ndarray, float]:
        return np.full(4, np.nan), 0.0


def _constant_reward(observations, actions):
    return np.ones(len(observations))


def _first_component_reward(observations, actions):
    return actions[:, 0]


@pytest.fixture
def policy(rng) -> GaussianPolicy:
    return GaussianPolicy.create(
        4, -np.ones(2), np.ones(2), rng, hidden_dims=[8], output_scale=1.0
    )


@pytest.fixture
def value_fn(rng) -> ValueFn:
    return ValueFn.create(4, rng, hidden_dims=[8])


@pytest.fixture
def zero_value() -> ValueFn:
    return ValueFn(Mlp([4, 1]))


class TestSimulateCandidates:
    def test__scores__discounted_reward_plus_value(self, rng, policy, value_fn):
        env = PointMass2D()
        state, obs = env.reset(rng)
        config = PlannerConfig(budget=4, horizon=5, gamma=0.9)

        rollouts = simulate_candidates(
            state, obs, policy, _first_component_reward, value_fn, env, config, 11, 0
        )

        assert [r.index for r in rollouts] == [0, 1, 2, 3]
        for r in rollouts:
            assert len(r.rewards) == 5
            assert np.allclose(r.rewards, [a[0] for a in r.actions])
            expected = sum(0.9**k * x for k, x in enumerate(r.rewards)) + 0.9**5 * (
                value_fn.value(r.terminal_observation)
            )
            assert r.estimated_return == pytest.approx(expected, rel=1e-12)

    def test__candidate_zero__is_policy_mean(self, rng, policy, value_fn):
        env = PointMass2D()
        state, obs = env.reset(rng)
        config = PlannerConfig(budget=3, horizon=2)

        rollouts = simulate_candidates(
            state, obs, policy, _constant_reward, value_fn, env, config, 0, 0
        )

        assert np.array_equal(rollouts[0].first_action, policy.mean_action(obs))
        assert not np.array_equal(rollouts[1].first_action, rollouts[0].first_action)

    def test__uniform_candidates__within_bounds(self, rng, policy, value_fn):
        env = PointMass2D()
        state, obs = env.reset(rng)
        config = PlannerConfig(
            budget=16,
            horizon=3,
            candidate_source=CandidateSource.UNIFORM_RANDOM,
            rollout_policy=RolloutPolicy.UNIFORM_RANDOM,
        )

        rollouts = simulate_candidates(
            state, obs, policy, _constant_reward, value_fn, env, config, 0, 0
        )

        for r in rollouts:
            for action in r.actions:
                assert np.all(np.abs(action) <= 1.0)

    @pytest.mark.parametrize(
        "mode",
        [RolloutPolicy.POLICY_SAMPLE, RolloutPolicy.MIXTURE, RolloutPolicy.POLICY_MEAN],
    )
    def test__same_stream_keys__identical_rollouts(self, rng, policy, value_fn, mode):
        env = PointMass2D()
        state, obs = env.reset(rng)
        config = PlannerConfig(budget=5, horizon=4, rollout_policy=mode)

        a = simulate_candidates(
            state, obs, policy, _constant_reward, value_fn, env, config, 3, 7
        )
        b = simulate_candidates(
            state, obs, policy, _constant_reward, value_fn, env, config, 3, 7
        )

        for x, y in zip(a, b):
            assert np.array_equal(np.vstack(x.actions), np.vstack(y.actions))
            assert x.estimated_return == y.estimated_return

    def test__diverging_model__candidates_marked(self, rng, policy, value_fn):
        env = PointMass2D()
        state, obs = env.reset(rng)
        config = PlannerConfig(budget=2, horizon=3)

        rollouts = simulate_candidates(
            state,
            obs,
            policy,
            _constant_reward,
            value_fn,
            _DivergingPointMass(),
            config,
            0,
            0,
        )

        assert all(r.diverged for r in rollouts)
        assert all(r.estimated_return == -np.inf for r in rollouts)


class TestPlanAction:
    def test__returns_first_action_of_best_candidate(self, rng, policy, zero_value):
        env = PointMass2D()
        state, obs = env.reset(rng)
        config = PlannerConfig(budget=8, horizon=1)

        action, diagnostics = plan_action(
            state, obs, policy, _first_component_reward, zero_value, env, config, 5, 0
        )
        rollouts = simulate_candidates(
            state, obs, policy, _first_component_reward, zero_value, env, config, 5, 0
        )

        best = max(rollouts, key=lambda r: r.first_action[0])
        assert np.array_equal(action, best.first_action)
        assert diagnostics.chosen_index == best.index
        assert diagnostics.best_score == pytest.approx(best.first_action[0])

    def test__ties__lowest_index_wins(self, rng, policy, zero_value):
        env = PointMass2D()
        state, obs = env.reset(rng)
        config = PlannerConfig(budget=6, horizon=2)

        action, diagnostics = plan_action(
            state, obs, policy, _constant_reward, zero_value, env, config, 0, 0
        )

        assert diagnostics.chosen_index == 0
        assert diagnostics.score_std == pytest.approx(0.0)
        assert np.array_equal(action, policy.mean_action(obs))

    def test__all_candidates_diverge__raises(self, rng, policy, value_fn):
        env = PointMass2D()
        state, obs = env.reset(rng)

        with pytest.raises(PlanningAbortedError):
            plan_action(
                state,
                obs,
                policy,
                _constant_reward,
                value_fn,
                _DivergingPointMass(),
                PlannerConfig(budget=3, horizon=2),
                0,
                0,
            )

    def test__non_finite_reward__raises(self, rng, policy, value_fn):
        env = PointMass2D()
        state, obs = env.reset(rng)

        with pytest.raises(PlanningAbortedError):
            plan_action(
                state,
                obs,
                policy,
                lambda o, a: np.full(len(o), np.nan),
                value_fn,
                env,
                PlannerConfig(budget=2, horizon=2),
                0,
                0,
            )


class TestPlannedEpisodes:
    def test__single_candidate_zero_horizon__equals_policy_execution(
        self, policy, value_fn
    ):
        env = PointMass2D(max_episode_steps=25)
        config = PlannerConfig(budget=1, horizon=0)

        planned = run_episode_with_planning(
            env, env, policy, _constant_reward, value_fn, config, 9
        )
        direct = run_policy_episode(env, policy, 9)

        assert np.array_equal(planned.action_matrix(), direct.action_matrix())
        assert planned.env_rewards == direct.env_rewards

    def test__worker_count__does_not_change_result(self, policy, value_fn):
        env = PointMass2D(max_episode_steps=10)
        serial, parallel = [], []

        a = run_episode_with_planning(
            env,
            env,
            policy,
            _first_component_reward,
            value_fn,
            PlannerConfig(budget=6, horizon=4, rollout_policy=RolloutPolicy.MIXTURE),
            2,
            diagnostics=serial,
        )
        with ThreadPoolExecutor(max_workers=3) as pool:
            b = run_episode_with_planning(
                env,
                env,
                policy,
                _first_component_reward,
                value_fn,
                PlannerConfig(
                    budget=6,
                    horizon=4,
                    rollout_policy=RolloutPolicy.MIXTURE,
                    workers=3,
                ),
                2,
                pool,
                parallel,
            )

        assert np.array_equal(a.action_matrix(), b.action_matrix())
        assert [d.chosen_index for d in serial] == [d.chosen_index for d in parallel]
        for x, y in zip(serial, parallel):
            assert np.array_equal(x.scores, y.scores)

    def test__own_pool_for_workers__same_result(self, policy, value_fn):
        env = PointMass2D(max_episode_steps=5)
        config = PlannerConfig(budget=4, horizon=3)

        a = run_episode_with_planning(
            env, env, policy, _constant_reward, value_fn, config, 1
        )
        b = run_episode_with_planning(
            env,
            env,
            policy,
            _constant_reward,
            value_fn,
            config.model_copy(update={"workers": 2}),
            1,
        )

        assert np.array_equal(a.action_matrix(), b.action_matrix())

    def test__mismatched_dimensions__raises(self, rng, value_fn):
        env = PointMass2D()
        policy = GaussianPolicy.create(3, -np.ones(2), np.ones(2), rng, hidden_dims=[4])

        with pytest.raises(RejectedInputError):
            run_episode_with_planning(
                env, env, policy, _constant_reward, value_fn, PlannerConfig(), 0
            )

    def test__diagnostics__one_row_per_step(self, policy, value_fn):
        env = PointMass2D(max_episode_steps=6)
        diagnostics = []

        run_episode_with_planning(
            env,
            env,
            policy,
            _constant_reward,
            value_fn,
            PlannerConfig(budget=3, horizon=2),
            0,
            diagnostics=diagnostics,
        )
        frame = diagnostics_to_dataframe(diagnostics)

        assert list(frame.columns) == DIAGNOSTICS_COLUMNS
        assert list(frame["step"]) == [0, 1, 2, 3, 4, 5]

    def test__stochastic_policy_episode__reproducible(self, policy):
        env = PointMass2D(max_episode_steps=8)

        a = run_policy_episode(env, policy, 4, stochastic=True)
        b = run_policy_episode(env, policy, 4, stochastic=True)
        mean = run_policy_episode(env, policy, 4)

        assert np.array_equal(a.action_matrix(), b.action_matrix())
        assert not np.array_equal(a.action_matrix(), mean.action_matrix())
