import numpy as np
import pytest
from implantlab.core import SimulationDivergedError
from implantlab.envs import EnvState, PointMass2D


class TestPointMass2D:
    def test__reset__within_start_box(self, rng):
        env = PointMass2D()

        state, obs = env.reset(rng)

        assert obs.shape == (4,)
        assert np.all(np.abs(obs[:2] - env.start) <= env.init_spread)
        assert np.all(np.abs(obs[2:]) <= env.init_velocity_spread)
        assert state.t == 0
        assert np.array_equal(state.last_action, np.zeros(2))

    def test__step__semi_implicit_euler(self):
        env = PointMass2D(dt=0.1, drag=0.5)
        state = EnvState(np.array([0.0, 0.0, 1.0, 0.0]), 0, np.zeros(2))

        result = env.step(state, np.array([1.0, -1.0]))

        v0, force = np.array([1.0, 0.0]), np.array([1.0, -1.0])
        velocity = v0 + 0.1 * (force - 0.5 * v0)
        assert np.allclose(result.observation[2:], velocity)
        assert np.allclose(result.observation[:2], 0.1 * velocity)
        assert result.reward == pytest.approx(-2.0 - 0.02)

    def test__step__clips_action(self):
        env = PointMass2D()
        state = EnvState(np.zeros(4), 0, np.zeros(2))

        result = env.step(state, np.array([5.0, -5.0]))

        assert np.array_equal(result.state.last_action, [1.0, -1.0])

    def test__step__does_not_mutate_state(self):
        env = PointMass2D()
        state = EnvState(np.zeros(4), 0, np.zeros(2))

        env.step(state, np.ones(2))

        assert np.array_equal(state.physical, np.zeros(4))
        assert state.t == 0

    def test__time_limit__truncates(self):
        env = PointMass2D(max_episode_steps=2)
        state = EnvState(np.zeros(4), 1, np.zeros(2))

        result = env.step(state, np.zeros(2))

        assert result.done
        assert result.truncated
        assert not result.terminated

    def test__non_finite_state__raises(self):
        env = PointMass2D()
        state = EnvState(np.array([np.inf, 0.0, 0.0, 0.0]), 0, np.zeros(2))

        with pytest.raises(SimulationDivergedError):
            env.step(state, np.zeros(2))

    def test__expert_at_goal__applies_no_force(self):
        env = PointMass2D()

        assert np.allclose(env.expert_action(np.array([1.0, 1.0, 0.0, 0.0])), 0.0)

    def test__speed__velocity_norm(self):
        env = PointMass2D()
        state = EnvState(np.array([0.0, 0.0, 3.0, 4.0]), 0, np.zeros(2))

        assert env.speed(state) == pytest.approx(5.0)

    def test__clone__is_equivalent(self, rng):
        env = PointMass2D(drag=0.3)
        clone = env.clone()
        state, _ = env.reset(rng)

        a = env.step(state, np.ones(2))
        b = clone.step(state, np.ones(2))

        assert clone is not env
        assert np.array_equal(a.observation, b.observation)

    def test__zero_width_start__always_at_rest_on_start(self, rng):
        env = PointMass2D(init_spread=0.0, init_velocity_spread=0.0)

        observations = [env.reset(rng)[1] for _ in range(20)]

        for obs in observations:
            assert np.array_equal(obs, [-1.0, -1.0, 0.0, 0.0])

    def test__default_start__covers_a_wide_box(self, rng):
        env = PointMass2D()

        observations = np.array([env.reset(rng)[1] for _ in range(500)])

        assert np.ptp(observations[:, 0]) > 2.0
        assert np.ptp(observations[:, 2]) > 1.0

    @pytest.mark.parametrize(
        "kwargs",
        [{"dt": 0.0}, {"init_spread": -1.0}, {"init_velocity_spread": -0.5}],
    )
    def test__invalid_options__raises(self, kwargs):
        with pytest.raises(ValueError):
            PointMass2D(**kwargs)
