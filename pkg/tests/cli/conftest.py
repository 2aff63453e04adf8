import pytest
import yaml


@pytest.fixture
def tiny_config_path(tmp_path):
    """Fixture to write a run configuration that completes every stage in seconds."""
    path = tmp_path / "tiny.yaml"
    path.write_text(
        yaml.safe_dump(
            {
                "seed": 0,
                "env": {"name": "LinearQuadratic"},
                "demos": {"n_traj": 2, "subsample": 5, "episode_length": None},
                "algorithm": ["BC", "GAIL", "IMPLANT"],
                "bc": {"epochs": 3, "batch_size": 16, "hidden_dims": [8]},
                "irl": {
                    "iterations": 2,
                    "batch_steps": 64,
                    "generator_steps": 1,
                    "value_fn_steps": 1,
                    "minibatch_size": 32,
                    "disc_minibatch_size": 32,
                    "hidden_dims": [8],
                    "norm_warmup_iterations": 1,
                },
                "planner": {"budget": 2, "horizon": 2},
                "eval": {"seeds": 1, "episodes": 2, "histogram_bins": 5},
            }
        ),
        encoding="utf-8",
    )
    return path
