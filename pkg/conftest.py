# -*- coding: utf-8 -*-

import numpy as np
import pytest  # type: ignore
from implantlab.core import PathConstants
from implantlab.harness import DemoProtocol
from implantlab.imitation import BcConfig, IrlConfig


def pytest_collection_modifyitems(items):
    """Modify the collected tests."""
    for item in items:
        # The integration tests are explicitly marked; everything else is a unit test.
        if not list(item.iter_markers("integration")):
            item.add_marker(pytest.mark.unit)


@pytest.fixture
def rng():
    """Fixture to get a generator seeded the same way in every test."""
    return np.random.default_rng(1234)


@pytest.fixture
def out_root(tmp_path, monkeypatch):
    """Fixture to send run artifacts to a temporary directory via ``IMPLANT_OUT``."""
    root = tmp_path / "runs"
    monkeypatch.setenv(PathConstants.OUTPUT_ENVIRONMENT_VARIABLE, str(root))
    return root


@pytest.fixture
def tiny_irl_config():
    """Fixture to get an IRL configuration that trains in well under a second."""
    return IrlConfig(
        iterations=2,
        batch_steps=64,
        generator_steps=1,
        value_fn_steps=1,
        minibatch_size=32,
        disc_minibatch_size=32,
        hidden_dims=[8],
        norm_warmup_iterations=1,
    )


@pytest.fixture
def tiny_bc_config():
    """Fixture to get a BC configuration that trains in well under a second."""
    return BcConfig(epochs=3, batch_size=16, hidden_dims=[8])


@pytest.fixture
def tiny_demo_protocol():
    """Fixture to get a demo protocol of two full-length expert episodes."""
    return DemoProtocol(n_traj=2, subsample=5, episode_length=200)
