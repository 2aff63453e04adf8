# -*- coding: utf-8 -*-

"""Expert and random reference returns used to normalize scores."""

import logging
from typing import List, NamedTuple

import numpy as np

from implantlab.core import ConfigurationError, named_seed, substream
from implantlab.envs import make_env, Mdp, rollout
from implantlab.planner import episode_reset_rng

_logger = logging.getLogger(__name__)


class ReferenceReturns(NamedTuple):
    """Mean returns of the expert and of a uniform-random policy."""

    expert: float
    random: float

    def normalize(self, mean_return: float) -> float:
        """``(mean - random) / (expert - random)``."""
        return (mean_return - self.random) / (self.expert - self.random)


def episode_seeds(seed: int, episodes: int) -> List[int]:
    """Seeds of the evaluation episodes of one experiment seed."""
    return [named_seed(seed, "eval", k) for k in range(episodes)]


def expert_return(env: Mdp, episode_seed: int) -> float:
    """Ground-truth return of the analytic expert on one episode."""
    trajectory = rollout(
        env,
        lambda state, obs, t: env.expert_action(obs),
        episode_reset_rng(episode_seed),
    )
    return trajectory.total_return()


def random_return(env: Mdp, episode_seed: int) -> float:
    """Ground-truth return of uniform-random actions on one episode."""
    rng = substream(episode_seed, "uniform")
    trajectory = rollout(
        env,
        lambda state, obs, t: env.sample_uniform_action(rng),
        episode_reset_rng(episode_seed),
    )
    return trajectory.total_return()


def measure_references(env_name: str, seed: int, episodes: int) -> ReferenceReturns:
    """Measure both references on the unperturbed environment.

    The episodes use the same seeds as the evaluation of ``seed``.

    Raises:
        ConfigurationError: if the expert does not beat the random policy.
    """
    env = make_env(env_name)
    seeds = episode_seeds(seed, episodes)
    references = ReferenceReturns(
        expert=float(np.mean([expert_return(env, s) for s in seeds])),
        random=float(np.mean([random_return(env, s) for s in seeds])),
    )
    if not references.expert > references.random:
        raise ConfigurationError(
            f"{env_name} expert return {references.expert:.4f} does not exceed the "
            f"random return {references.random:.4f}"
        )
    _logger.debug(
        "%s seed %d references: expert %.4f, random %.4f",
        env_name,
        seed,
        references.expert,
        references.random,
    )
    return references
