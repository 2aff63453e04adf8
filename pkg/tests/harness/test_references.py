import pytest
from implantlab.core import ConfigurationError
from implantlab.envs import LinearQuadratic
from implantlab.harness import (
    episode_seeds,
    expert_return,
    measure_references,
    random_return,
    ReferenceReturns,
)


class TestReferenceReturns:
    def test__normalize__expert_one_random_zero(self):
        references = ReferenceReturns(expert=-10.0, random=-110.0)

        assert references.normalize(-10.0) == pytest.approx(1.0)
        assert references.normalize(-110.0) == pytest.approx(0.0)
        assert references.normalize(-60.0) == pytest.approx(0.5)

    def test__normalize__worse_than_random__negative(self):
        assert ReferenceReturns(expert=1.0, random=0.0).normalize(-1.0) < 0


class TestEpisodeSeeds:
    def test__same_seed__same_episode_seeds(self):
        assert episode_seeds(3, 5) == episode_seeds(3, 5)

    def test__episode_seeds__distinct(self):
        seeds = episode_seeds(0, 10) + episode_seeds(1, 10)

        assert len(set(seeds)) == 20

    def test__prefix__stable_when_more_episodes_requested(self):
        assert episode_seeds(2, 8)[:3] == episode_seeds(2, 3)


class TestMeasureReferences:
    def test__linear_quadratic__expert_beats_random(self):
        references = measure_references("LinearQuadratic", 0, 2)

        assert references.expert > references.random

    def test__repeated__identical(self):
        first = measure_references("LinearQuadratic", 1, 2)
        second = measure_references("LinearQuadratic", 1, 2)

        assert first == second

    def test__single_episode__matches_episode_functions(self):
        env = LinearQuadratic()
        (episode_seed,) = episode_seeds(0, 1)

        references = measure_references("LinearQuadratic", 0, 1)

        assert references.expert == pytest.approx(expert_return(env, episode_seed))
        assert references.random == pytest.approx(random_return(env, episode_seed))

    def test__expert_not_above_random__raises(self, monkeypatch):
        monkeypatch.setattr(
            "implantlab.harness._references.expert_return",
            lambda env, episode_seed: -1e9,
        )

        with pytest.raises(ConfigurationError):
            measure_references("LinearQuadratic", 0, 1)
