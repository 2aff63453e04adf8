import numpy as np
import pytest
from implantlab.core import ConfigurationError, RewardChannelError
from implantlab.envs import PointMass2D, RewardFreeEnv, rollout, Trajectory


class TestTrajectory:
    def test__inconsistent_lengths__raises(self):
        with pytest.raises(ValueError):
            Trajectory([np.zeros(1)], [np.zeros(1)], [0.0], False)

    def test__returns__sum_and_discounted_sum(self):
        trajectory = Trajectory(
            [np.zeros(1)] * 4, [np.zeros(1)] * 3, [1.0, 2.0, 3.0], True
        )

        assert trajectory.length == 3
        assert trajectory.total_return() == 6.0
        assert trajectory.discounted_return(0.5) == pytest.approx(1.0 + 1.0 + 0.75)

    def test__rollout__stops_at_time_limit(self, rng):
        env = PointMass2D(max_episode_steps=7)

        trajectory = rollout(env, lambda state, obs, t: np.zeros(2), rng)

        assert trajectory.length == 7
        assert trajectory.done
        assert trajectory.observation_matrix().shape == (7, 4)
        assert trajectory.action_matrix().shape == (7, 2)

    def test__rollout_with_max_steps__runs_past_time_limit(self, rng):
        env = PointMass2D(max_episode_steps=5)

        trajectory = rollout(env, lambda state, obs, t: np.zeros(2), rng, max_steps=12)

        assert trajectory.length == 12

    def test__rollout__same_generator_seed_same_episode(self):
        env = PointMass2D()
        act = lambda state, obs, t: env.expert_action(obs)  # noqa: E731

        a = rollout(env, act, np.random.default_rng(5), max_steps=20)
        b = rollout(env, act, np.random.default_rng(5), max_steps=20)

        assert a.env_rewards == b.env_rewards


class TestRewardFreeEnv:
    def test__step__hides_reward(self, rng):
        env = RewardFreeEnv(PointMass2D())
        state, _ = env.reset(rng)

        result = env.step(state, np.zeros(2))

        assert not result.has_reward
        with pytest.raises(RewardChannelError):
            result.reward

    def test__observations__match_inner_environment(self, rng):
        inner = PointMass2D()
        env = RewardFreeEnv(inner)
        state, _ = env.reset(rng)

        assert np.array_equal(
            env.step(state, np.ones(2)).observation,
            inner.step(state, np.ones(2)).observation,
        )

    def test__wrapped_twice__raises(self):
        with pytest.raises(ConfigurationError):
            RewardFreeEnv(RewardFreeEnv(PointMass2D()))
