# -*- coding: utf-8 -*-

"""Implementation of Trajectory and rollouts."""

from typing import Callable, List, Optional

import numpy as np

from ._mdp import EnvState, Mdp

ActionFn = Callable[[EnvState, np.ndarray, int], np.ndarray]
"""Chooses an action from ``(state, observation, step index)``."""


class Trajectory:
    """An ordered sequence of observations, actions and ground-truth rewards.

    ``states`` holds one more entry than ``actions``: the observation reached after
    the last action.
    """

    def __init__(
        self,
        states: List[np.ndarray],
        actions: List[np.ndarray],
        env_rewards: List[float],
        done: bool,
    ) -> None:
        """Initialize a trajectory.

        Raises:
            ValueError: if the list lengths are inconsistent.
        """
        if len(actions) != len(states) - 1 or len(env_rewards) != len(actions):
            raise ValueError("a trajectory needs len(actions) == len(states) - 1")
        self.states = states
        self.actions = actions
        self.env_rewards = env_rewards
        self.done = done

    @property
    def length(self) -> int:  # noqa: D401
        """Number of steps."""
        return len(self.actions)

    def total_return(self) -> float:
        """Undiscounted sum of rewards."""
        return float(np.sum(self.env_rewards)) if self.env_rewards else 0.0

    def discounted_return(self, gamma: float) -> float:
        """Discounted sum of rewards."""
        rewards = np.asarray(self.env_rewards, dtype=np.float64)
        return float(np.sum(rewards * gamma ** np.arange(len(rewards))))

    def observation_matrix(self) -> np.ndarray:
        """Observations at which actions were taken, stacked as rows."""
        return np.asarray(self.states[:-1], dtype=np.float64)

    def action_matrix(self) -> np.ndarray:
        """Actions stacked as rows."""
        return np.asarray(self.actions, dtype=np.float64)


def rollout(
    env: Mdp,
    act: ActionFn,
    rng: np.random.Generator,
    max_steps: Optional[int] = None,
) -> Trajectory:
    """Run one episode.

    Args:
        env: Environment with a visible reward channel.
        act: Action chooser.
        rng: Generator for the initial state.
        max_steps: Steps to run regardless of the time limit; by default the episode
            stops when the environment reports done.

    Returns:
        The recorded trajectory, with executed (clipped) actions.
    """
    state, obs = env.reset(rng)
    states, actions, rewards = [obs], [], []
    done = False
    limit = max_steps if max_steps is not None else env.max_episode_steps
    for t in range(limit):
        action = env.clip_action(act(state, obs, t))
        result = env.step(state, action)
        actions.append(action)
        rewards.append(result.reward)
        states.append(result.observation)
        state, obs = result.state, result.observation
        if result.terminated or (max_steps is None and result.done):
            done = True
            break
    else:
        done = True
    return Trajectory(states, actions, rewards, done)
