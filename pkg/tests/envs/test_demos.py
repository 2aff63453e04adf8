import numpy as np
import pytest
from implantlab.core import (
    ConfigurationError,
    DegenerateExpertError,
    MissingArtifactError,
)
from implantlab.envs import collect_demos, DemoSet, LinearQuadratic, PointMass2D


@pytest.fixture
def demo_set(rng) -> DemoSet:
    return DemoSet(
        "PointMass2D", rng.standard_normal((6, 4)), rng.standard_normal((6, 2))
    )


class TestDemos:
    def test__collect__subsamples_every_nth_pair(self, rng):
        env = LinearQuadratic()

        demos = collect_demos(env, 3, 10, rng, episode_length=50)

        assert demos.pairs == 3 * 5
        assert demos.obs_dim == 4
        assert demos.act_dim == 2
        assert demos.n_traj == 3
        assert np.isfinite(demos.expert_mean_return)

    def test__collect__actions_come_from_expert(self, rng):
        env = LinearQuadratic()

        demos = collect_demos(env, 1, 1, rng, episode_length=50)

        for obs, action in zip(demos.observations, demos.actions):
            assert np.allclose(action, env.expert_action(obs))

    def test__collect__each_episode_keeps_one_strided_offset(self, rng):
        env = PointMass2D(init_spread=0.0, init_velocity_spread=0.0)
        full = collect_demos(env, 1, 1, rng).observations

        demos = collect_demos(env, 20, 10, rng)

        offsets = set()
        for chunk in np.split(demos.observations, 20):
            matches = [
                k for k in range(10) if np.array_equal(chunk, full[k::10])
            ]
            assert len(matches) == 1
            offsets.add(matches[0])
        assert demos.pairs == 20 * 20
        assert len(offsets) > 1

    @pytest.mark.parametrize("n_traj, subsample", [(0, 1), (1, 0)])
    def test__invalid_counts__raises(self, rng, n_traj, subsample):
        with pytest.raises(ValueError):
            collect_demos(LinearQuadratic(), n_traj, subsample, rng)

    def test__poor_expert__raises(self, rng):
        env = PointMass2D()

        with pytest.raises(DegenerateExpertError):
            collect_demos(env, 1, 1, rng, expert=lambda obs: -np.ones(2))

    def test__text_format__header_then_columns(self, demo_set):
        text = demo_set.to_text()
        lines = text.splitlines()

        assert lines[0] == (
            "implant-demos v1, env=PointMass2D, obs_dim=4, act_dim=2, pairs=6"
        )
        assert lines[1] == "s_0,s_1,s_2,s_3,a_0,a_1"
        assert len(lines) == 8

    def test__written_and_read__values_exact(self, tmp_path, demo_set):
        path = tmp_path / "demos.csv"
        demo_set.write(path)

        loaded = DemoSet.read(path)

        assert loaded.env_name == "PointMass2D"
        assert np.array_equal(loaded.observations, demo_set.observations)
        assert np.array_equal(loaded.actions, demo_set.actions)

    def test__malformed_header__raises(self):
        with pytest.raises(ConfigurationError):
            DemoSet.from_text("not a demo file\na,b\n1,2\n")

    def test__body_disagrees_with_header__raises(self, demo_set):
        text = demo_set.to_text().replace("pairs=6", "pairs=7")

        with pytest.raises(ConfigurationError):
            DemoSet.from_text(text)

    def test__missing_file__raises(self, tmp_path):
        with pytest.raises(MissingArtifactError):
            DemoSet.read(tmp_path / "nope.csv")

    def test__mismatched_rows__raises(self):
        with pytest.raises(ValueError):
            DemoSet("x", np.zeros((3, 2)), np.zeros((2, 1)))
