import math

import numpy as np
import pytest
from implantlab.core import ConfigurationError
from implantlab.envs import collect_demos, DemoSet, PointMass2D, RewardFreeEnv
from implantlab.imitation import irl_train, IrlTrainer


@pytest.fixture
def demos() -> DemoSet:
    return collect_demos(PointMass2D(), 2, 5, np.random.default_rng(0))


class TestIrlTraining:
    def test__tiny_run__returns_trained_triple_and_log(self, demos, tiny_irl_config):
        env = RewardFreeEnv(PointMass2D())
        records = []
        trainer = IrlTrainer(tiny_irl_config)
        trainer.iteration_completed += records.append

        result = trainer.train(env, demos, np.random.default_rng(1))

        assert [r.iteration for r in result.log] == [0, 1]
        assert records == result.log
        for record in result.log:
            assert math.isnan(record.mean_return)
            assert np.isfinite(record.disc_loss)
            assert record.mean_inferred_reward > 0.0
            assert np.isfinite(record.value_loss)
        assert result.policy.obs_dim == 4
        assert result.discriminator.net.input_dim == 6
        assert result.value_fn.obs_dim == 4

    def test__monitor__reported_each_iteration(self, demos, tiny_irl_config):
        calls = []

        def monitor(policy):
            calls.append(policy)
            return -12.5

        result = irl_train(
            RewardFreeEnv(PointMass2D()),
            demos,
            tiny_irl_config,
            np.random.default_rng(1),
            monitor,
        )

        assert len(calls) == 2
        assert [r.mean_return for r in result.log] == [-12.5, -12.5]

    def test__same_seed__identical_results(self, demos, tiny_irl_config):
        env = RewardFreeEnv(PointMass2D())

        a = irl_train(env, demos, tiny_irl_config, np.random.default_rng(3))
        b = irl_train(env, demos, tiny_irl_config, np.random.default_rng(3))

        assert [r.disc_loss for r in a.log] == [r.disc_loss for r in b.log]
        assert [r.value_loss for r in a.log] == [r.value_loss for r in b.log]
        assert np.array_equal(a.policy.log_std, b.policy.log_std)

    def test__normalizer__frozen_after_warmup(self, demos, tiny_irl_config):
        result = irl_train(
            RewardFreeEnv(PointMass2D()),
            demos,
            tiny_irl_config,
            np.random.default_rng(1),
        )

        assert result.discriminator.normalizer.frozen

    def test__env_with_rewards__raises(self, demos, tiny_irl_config):
        with pytest.raises(ConfigurationError):
            irl_train(PointMass2D(), demos, tiny_irl_config, np.random.default_rng(1))

    def test__demos_of_other_shape__raises(self, tiny_irl_config):
        demos = DemoSet("Pendulum", np.zeros((4, 2)), np.zeros((4, 1)))

        with pytest.raises(ConfigurationError):
            irl_train(
                RewardFreeEnv(PointMass2D()),
                demos,
                tiny_irl_config,
                np.random.default_rng(1),
            )
