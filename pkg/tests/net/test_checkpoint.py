import numpy as np
import pytest
from implantlab.core import ConfigurationError, MissingArtifactError
from implantlab.net import (
    Checkpoint,
    checkpoint_from_bytes,
    checkpoint_to_bytes,
    CheckpointHead,
    load_checkpoint,
    Mlp,
    save_checkpoint,
)


@pytest.fixture
def policy_checkpoint(rng) -> Checkpoint:
    net = Mlp.initialized([3, 4, 2], rng, dropout_rate=0.25)
    return Checkpoint(net, CheckpointHead.POLICY, log_std=np.array([-1.0, -2.0]))


class TestCheckpoint:
    def test__saved_and_loaded__network_outputs_identical(
        self, tmp_path, rng, policy_checkpoint
    ):
        path = tmp_path / "policy.implnt"
        save_checkpoint(path, policy_checkpoint)

        loaded = load_checkpoint(path)
        x = rng.standard_normal((5, 3))

        assert loaded.head is CheckpointHead.POLICY
        assert loaded.net.layer_dims == (3, 4, 2)
        assert loaded.net.dropout_rate == 0.25
        assert np.array_equal(loaded.log_std, [-1.0, -2.0])
        assert np.array_equal(loaded.net.forward(x), policy_checkpoint.net.forward(x))

    def test__discriminator_head__keeps_normalizer(self, rng):
        net = Mlp.initialized([2, 3, 1], rng)
        checkpoint = Checkpoint(
            net,
            CheckpointHead.DISCRIMINATOR,
            input_mean=np.array([0.5, 1.5]),
            input_std=np.array([2.0, 3.0]),
        )

        loaded = checkpoint_from_bytes(checkpoint_to_bytes(checkpoint))

        assert np.array_equal(loaded.input_mean, [0.5, 1.5])
        assert np.array_equal(loaded.input_std, [2.0, 3.0])

    def test__policy_without_log_std__raises(self, rng):
        checkpoint = Checkpoint(Mlp.initialized([2, 1], rng), CheckpointHead.POLICY)

        with pytest.raises(ValueError):
            checkpoint_to_bytes(checkpoint)

    def test__bad_magic__raises(self, policy_checkpoint):
        data = checkpoint_to_bytes(policy_checkpoint)

        with pytest.raises(ConfigurationError):
            checkpoint_from_bytes(b"NOTMAGIC" + data[8:])

    def test__truncated__raises(self, policy_checkpoint):
        data = checkpoint_to_bytes(policy_checkpoint)

        with pytest.raises(ConfigurationError):
            checkpoint_from_bytes(data[:-3])

    def test__trailing_bytes__raises(self, policy_checkpoint):
        data = checkpoint_to_bytes(policy_checkpoint)

        with pytest.raises(ConfigurationError):
            checkpoint_from_bytes(data + b"\x00")

    def test__missing_file__raises(self, tmp_path):
        with pytest.raises(MissingArtifactError) as info:
            load_checkpoint(tmp_path / "absent.implnt")

        assert info.value.path == str(tmp_path / "absent.implnt")
