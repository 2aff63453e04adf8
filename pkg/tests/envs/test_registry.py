import pytest
from implantlab.core import ConfigurationError
from implantlab.envs import env_defaults, ENV_NAMES, make_env


class TestRegistry:
    def test__every_name__builds_matching_environment(self):
        for name in ENV_NAMES:
            assert make_env(name).name == name

    def test__overrides__passed_to_constructor(self):
        env = make_env("PointMass2D", max_episode_steps=17)

        assert env.max_episode_steps == 17

    def test__unknown_name__raises(self):
        with pytest.raises(ConfigurationError):
            make_env("CartPole")

    def test__unknown_override__raises(self):
        with pytest.raises(ConfigurationError):
            make_env("Pendulum", wheels=4)

    def test__defaults__tuned_per_environment(self):
        assert env_defaults("PointMass2D").horizon == 50
        assert env_defaults("Pendulum").velocity_threshold == 1.0
        with pytest.raises(ConfigurationError):
            env_defaults("CartPole")
